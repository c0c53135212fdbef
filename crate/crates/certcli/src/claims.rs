use nodal_core::cubics::{
    cubics_through_scroll, smoothness_over, unique_sextic, MAX_SMOOTHNESS_PRIME,
};
use nodal_core::exact::{span_rank, FieldScalar, Fp, PrimeField, Rational};
use nodal_core::grass::{
    bisecant_certificate, forward_slice, genus_ledger, in_grassmannian, kappa_search, ruling_curve,
    SLICE_RETRY_BUDGET,
};
use nodal_core::lattice::{
    arith_genus, bb_q, dimension_ledger, diophantine_enumerate, diophantine_enumerate_with_margin,
    diophantine_reduce, discriminant2, double_point, gram_l, q_curve, scrolls1_certificate,
    BBClass, CurveClass, DiscriminantData, DoublePointData, GramLattice, LatticeClass,
};
use nodal_core::scroll::{
    build_projection, certify_nodes, determinantal_residuals, s34_image, sample_secant_frame,
    secant_slice, Determinantal, MinorSystem, SecantFrame,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Claim, ClaimResult, Config, Outcome, Verdict};

pub(crate) static REGISTRY: &[Claim] = &[
    Claim { id: "bb-gamma", anchor: "class of the distinguished divisor: \"Since $q(\\gamma_S,\\gamma_S)=6$\"", check: bb_gamma },
    Claim { id: "scrolls1", anchor: "effective 1-cycles of degree 7: \"only integer solution of this inequality is $a_1=0$\"", check: scrolls1 },
    Claim { id: "c14-remark", anchor: "degree 14 class: \"Note that $q(R,R)=-2$\"", check: c14_remark },
    Claim { id: "discriminant-26", anchor: "discriminant 26: \"necessarily $R^2=25$\"", check: discriminant_26 },
    Claim { id: "double-point-3", anchor: "double point formula: \"we compute $D(\\phi)=3$\"", check: double_point_3 },
    Claim { id: "scroll-ideal", anchor: "determinantal ideal: \"the ideal of $R'$ in ${\\textbf P}^8$\"", check: scroll_ideal },
    Claim { id: "secant-dim-5", anchor: "secant variety: \"Sec(R') is $5$-dimensional\"", check: secant_dim_5 },
    Claim { id: "secant-slice-3pts", anchor: "general projection: \"consists only of the points $a_1,a_2,a_3$\"", check: secant_slice_3pts },
    Claim { id: "nodes-3", anchor: "general projection: \"three non-normal nodes\"", check: nodes_3 },
    Claim { id: "cubics-13", anchor: "cubics through the scroll: \"$\\mathrm{dim } |\\mathcal{I}_{R/{\\textbf P}^5}(3)|=12$\"", check: cubics_13 },
    Claim { id: "unique-sextic", anchor: "plane sextic: \"unique sextic $A_0'$\"", check: unique_sextic_claim },
    Claim { id: "smooth-cubic", anchor: "general cubic through the scroll: \"a simple Macaulay calculation\"", check: smooth_cubic },
    Claim { id: "gamma-span-7", anchor: "span of the ruling curve: \"$\\dim \\langle \\Gamma \\rangle = 7$\"", check: gamma_span_7 },
    Claim { id: "bisecants-3", anchor: "bisecants: \"admits three secant lines that lie in ${\\textbf G}(1,5)$\"", check: bisecants_3 },
    Claim { id: "slice-genus8", anchor: "linear section of G(1,5): \"$=\\Gamma_R+L_1+L_2+L_3+Q$\"", check: slice_genus8 },
    Claim { id: "gram-L", anchor: "configuration lattice: \"even and has signature $(1,4)$\"", check: gram_lattice },
    Claim { id: "very-ample", anchor: "very ampleness: \"$-15x^2-12xy-5y^2+2x+y$\"", check: very_ample },
    Claim { id: "brill-noether", anchor: "Brill-Noether generality: \"$z_1+z_2+z_3+7x+4y=7$\"", check: brill_noether },
    Claim { id: "kappa", anchor: "reverse construction: \"$\\langle Q_0+L_1+L_2+L_3\\rangle \\cong {\\textbf P}^7$\"", check: kappa_claim },
    Claim { id: "dimension-ledger", anchor: "parameter count: \"$35= \\mbox{dim } \\ PGL(6)$\"", check: dimension_ledger_claim },
];

fn outcome(passed: bool, witnesses: Value) -> ClaimResult {
    Ok(Outcome {
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        witnesses,
    })
}

fn lattice(config: &Config) -> GramLattice {
    config.gram_override.clone().unwrap_or_else(gram_l)
}

fn frame(config: &Config) -> Result<SecantFrame, Box<dyn std::error::Error>> {
    Ok(sample_secant_frame(config.prime, config.seed)?)
}

/// A point of P^2 other than the base point (1:0:0).
fn random_parameter(rng: &mut ChaCha8Rng, p: u64) -> [i64; 3] {
    loop {
        let z: [i64; 3] = std::array::from_fn(|_| rng.gen_range(0..p) as i64);
        if z[1] != 0 || z[2] != 0 {
            return z;
        }
    }
}

fn bb_gamma(_: &Config) -> ClaimResult {
    let g = 14;
    let gamma = BBClass::new(2, -7, g);
    let q = bb_q(&gamma, &gamma)?;
    let ff = bb_q(&BBClass::f(g), &BBClass::f(g))?;
    let fd = bb_q(&BBClass::f(g), &BBClass::delta(g))?;
    outcome(
        q == 6 && ff == 2 * g - 2 && fd == 0,
        json!({ "genus": g, "class": gamma, "q": q, "q_f_f": ff, "q_f_delta": fd }),
    )
}

fn scrolls1(_: &Config) -> ClaimResult {
    let c = scrolls1_certificate()?;
    let passed = c.inequality == [39, -26, -1]
        && c.integer_solutions == [0]
        && c.class == CurveClass::delta_p(14);
    outcome(passed, serde_json::to_value(&c)?)
}

fn c14_remark(_: &Config) -> ClaimResult {
    let class = CurveClass::minus(3, 16, 8);
    let q = q_curve(&class);
    outcome(
        q.is_integer() && q.to_integer() == -2,
        json!({ "class": class, "q": q.to_string() }),
    )
}

fn discriminant_26(_: &Config) -> ClaimResult {
    let (deg, disc) = (7, 26);
    let forced = (disc + deg * deg) % 3 == 0;
    let r2 = (disc + deg * deg) / 3;
    let d = discriminant2(&DiscriminantData { deg, r2: 25 });
    outcome(
        forced && r2 == 25 && d == 26,
        json!({ "degree": deg, "discriminant": disc, "forced_self_intersection": r2, "gram": [[3, deg], [deg, 25]], "determinant": d }),
    )
}

fn double_point_3(_: &Config) -> ClaimResult {
    let septic = DoublePointData {
        deg: 7,
        r2: 25,
        k2: 8,
        hk: -9,
        chi: 4,
    };
    let quintic = DoublePointData {
        deg: 5,
        r2: 13,
        k2: 8,
        hk: -7,
        chi: 4,
    };
    let (d7, d5) = (double_point(&septic)?, double_point(&quintic)?);
    outcome(
        d7 == 3 && d5 == 0,
        json!({ "septic": septic, "nodes": d7, "quintic_control": quintic, "quintic_nodes": d5 }),
    )
}

fn scroll_ideal(config: &Config) -> ClaimResult {
    let f = PrimeField::new(config.prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let samples = 1000;
    let (mut scroll_failures, mut secant_failures) = (Vec::new(), Vec::new());
    for _ in 0..samples {
        let z = random_parameter(&mut rng, config.prime);
        let x = s34_image::<Fp>(&f, &z);
        if !determinantal_residuals(&x, Determinantal::Scroll)?
            .iter()
            .all(Fp::is_zero)
        {
            scroll_failures.push(z);
        }
        if !determinantal_residuals(&x, Determinantal::Secant)?
            .iter()
            .all(Fp::is_zero)
        {
            secant_failures.push(z);
        }
    }
    outcome(
        scroll_failures.is_empty() && secant_failures.is_empty(),
        json!({
            "samples": samples,
            "scroll_minors": 21,
            "secant_minors": 10,
            "scroll_failures": scroll_failures,
            "secant_failures": secant_failures,
        }),
    )
}

fn secant_dim_5(config: &Config) -> ClaimResult {
    let f = PrimeField::new(config.prime)?;
    let system = MinorSystem::<Fp>::new(&f, Determinantal::Secant);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (target, scroll_samples) = (200, 20);
    let mut ranks = std::collections::BTreeMap::<usize, usize>::new();
    let mut skipped = 0;
    let mut taken = 0;
    while taken < target {
        let (x, y) = (
            random_parameter(&mut rng, config.prime),
            random_parameter(&mut rng, config.prime),
        );
        let c = f.elem(rng.gen_range(1..config.prime) as i64);
        let a: Vec<Fp> = s34_image::<Fp>(&f, &x)
            .into_iter()
            .zip(s34_image::<Fp>(&f, &y))
            .map(|(u, v)| u + c * v)
            .collect();
        let on_scroll = determinantal_residuals(&a, Determinantal::Scroll)?
            .iter()
            .all(Fp::is_zero);
        if a.iter().all(Fp::is_zero) || on_scroll {
            skipped += 1;
            continue;
        }
        *ranks.entry(system.jacobian_rank(&a)?).or_default() += 1;
        taken += 1;
    }
    let mut scroll_ranks = Vec::new();
    for _ in 0..scroll_samples {
        let z = random_parameter(&mut rng, config.prime);
        scroll_ranks.push(system.jacobian_rank(&s34_image::<Fp>(&f, &z))?);
    }
    let passed = ranks.len() == 1 && ranks.contains_key(&3) && scroll_ranks.iter().all(|&r| r < 3);
    outcome(
        passed,
        json!({
            "secant_samples": target,
            "skipped_on_scroll": skipped,
            "jacobian_rank_histogram": ranks,
            "codimension": 3,
            "dimension": 8 - 3,
            "scroll_sample_ranks": scroll_ranks,
        }),
    )
}

fn secant_slice_3pts(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let report = secant_slice(&frame, config.prime)?;
    let passed = report.matches_chord_points
        && report.solutions.len() == 3
        && report.jacobian_ranks.iter().all(|&r| r == 2);
    outcome(passed, json!({ "frame": frame, "slice": report }))
}

fn nodes_3(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let proj = build_projection::<Fp>(&frame, &frame.field())?;
    let cert = certify_nodes(&frame, &proj, config.prime)?;
    outcome(cert.passed, json!({ "frame": frame, "nodes": cert }))
}

fn cubics_13(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let field = PrimeField::new(config.rank_prime)?;
    let modp = cubics_through_scroll(&frame, &build_projection::<Fp>(&frame, &field)?)?;
    let rational = cubics_through_scroll(&frame, &build_projection::<Rational>(&frame, &())?)?;
    let ok = |r: &nodal_core::cubics::LinearSystemReport| {
        r.h0 == 13 && r.rank == 43 && r.node_system == 53 && r.f1_system == 40 && r.h1 == 0
    };
    outcome(
        ok(&modp) && ok(&rational),
        json!({ "frame": frame, "over_fp": modp, "over_q": rational }),
    )
}

fn unique_sextic_claim(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let field = PrimeField::new(config.rank_prime)?;
    let s = unique_sextic::<Fp>(&frame, &field)?;
    let mut w = json!({
        "frame": frame,
        "monomials": s.monomials,
        "kernel_dimension": s.kernel_dimension,
        "evaluation_rank": s.evaluation_rank,
        "coefficients": s.coefficients.iter().map(Fp::value).collect::<Vec<_>>(),
    });
    let mut passed = s.kernel_dimension == 1;
    if config.exact_rationals {
        let q = unique_sextic::<Rational>(&frame, &())?;
        passed &= q.kernel_dimension == 1;
        w["over_q"] = json!({
            "kernel_dimension": q.kernel_dimension,
            "coefficients": q.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
    }
    outcome(passed, w)
}

fn smooth_cubic(config: &Config) -> ClaimResult {
    let p = 11.min(MAX_SMOOTHNESS_PRIME);
    let report = smoothness_over(p, config.seed)?;
    Ok(Outcome {
        verdict: if report.passed {
            Verdict::HeuristicPass
        } else {
            Verdict::Fail
        },
        witnesses: serde_json::to_value(&report)?,
    })
}

fn gamma_span_7(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let field = PrimeField::new(config.rank_prime)?;
    let curve = ruling_curve(&build_projection::<Fp>(&frame, &field)?)?;
    let rank = curve.span_rank()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut off_grassmannian = Vec::new();
    for _ in 0..20 {
        let (s, t) = (
            rng.gen_range(0..config.rank_prime) as i64,
            rng.gen_range(0..config.rank_prime) as i64,
        );
        let v = curve.eval(&field.elem(s), &field.elem(t));
        if v.iter().all(Fp::is_zero) || !in_grassmannian(&v)? {
            off_grassmannian.push([s, t]);
        }
    }
    let mut passed = curve.degree == 7 && rank == 8 && off_grassmannian.is_empty();
    let mut w = json!({
        "frame": frame,
        "degree": curve.degree,
        "content_degree": curve.content_degree,
        "coefficient_rank": rank,
        "projective_span_dimension": rank as i64 - 1,
        "evaluations": 20,
        "evaluations_off_grassmannian": off_grassmannian,
    });
    if config.exact_rationals {
        let q = ruling_curve(&build_projection::<Rational>(&frame, &())?)?;
        let q_rank = span_rank(&q.coefficient_span())?;
        passed &= q.degree == 7 && q_rank == 8;
        w["over_q"] = json!({ "degree": q.degree, "coefficient_rank": q_rank });
    }
    outcome(passed, w)
}

fn bisecants_3(config: &Config) -> ClaimResult {
    let frame = frame(config)?;
    let proj = build_projection::<Fp>(&frame, &frame.field())?;
    let cert = bisecant_certificate(&ruling_curve(&proj)?, &frame)?;
    outcome(cert.passed, json!({ "frame": frame, "bisecants": cert }))
}

fn slice_genus8(config: &Config) -> ClaimResult {
    let search = forward_slice(config.slice_prime, config.seed, SLICE_RETRY_BUDGET)?;
    let Some(acc) = &search.accepted else {
        return outcome(
            false,
            json!({ "primes": search.primes, "rejected": search.rejected }),
        );
    };
    let ledger = genus_ledger(&acc.report)?;
    let passed = ledger.mismatches.is_empty()
        && ledger.genus_curve_and_lines == 3
        && ledger.genus_total == 8;
    outcome(
        passed,
        json!({
            "primes": search.primes,
            "rejected": search.rejected,
            "accepted": acc,
            "genus_ledger": ledger,
        }),
    )
}

fn gram_lattice(config: &Config) -> ClaimResult {
    let l = lattice(config);
    let r = l.report();
    let e = |i| LatticeClass::basis(l.rank(), i);
    let genera = if l.rank() == 5 {
        let curve_and_lines = arith_genus(&[e(0), e(2), e(3), e(4)], &l).ok();
        let total = arith_genus(&[e(0), e(1), e(2), e(3), e(4)], &l).ok();
        json!({ "curve_and_lines": curve_and_lines, "total": total })
    } else {
        Value::Null
    };
    let passed = r.symmetric
        && r.even
        && r.signature == (1, 4, 0)
        && r.c_square == 14
        && r.c_degrees == [7, 4, 1, 1, 1]
        && genera == json!({ "curve_and_lines": 3, "total": 8 });
    outcome(
        passed,
        json!({ "lattice": l, "report": r, "arithmetic_genus": genera }),
    )
}

/// Reduced equation, solutions in the default box, agreement with a larger box.
type Census = (Value, Vec<[i64; 5]>, bool);

fn very_ample(config: &Config) -> ClaimResult {
    let l = lattice(config);
    let case = |square: i64, dot: i64| -> Result<Census, Box<dyn std::error::Error>> {
        let eq = diophantine_reduce(&l, square, dot)?;
        let found = diophantine_enumerate(&eq)?;
        let stable = diophantine_enumerate_with_margin(&eq, 5)? == found;
        Ok((serde_json::to_value(eq)?, found, stable))
    };
    let (elliptic, elliptic_found, s1) = case(0, 1)?;
    let (contracted, contracted_found, s2) = case(-2, 0)?;
    let (control, control_found, s3) = case(-2, 1)?;
    let lines: Vec<[i64; 5]> = vec![[0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0]];
    let passed = elliptic_found.is_empty()
        && contracted_found.is_empty()
        && control_found == lines
        && s1
        && s2
        && s3;
    outcome(
        passed,
        json!({
            "square_0_degree_1": { "equation": elliptic, "solutions": elliptic_found },
            "square_minus2_degree_0": { "equation": contracted, "solutions": contracted_found },
            "positive_control_square_minus2_degree_1": { "equation": control, "solutions": control_found },
            "enlarged_box_agrees": s1 && s2 && s3,
        }),
    )
}

fn brill_noether(config: &Config) -> ClaimResult {
    let l = lattice(config);
    let eq = diophantine_reduce(&l, 2, 7)?;
    let found = diophantine_enumerate(&eq)?;
    let stable = diophantine_enumerate_with_margin(&eq, 5)? == found;
    let plus_one = eq.with_constant(1);
    let plus_one_found = diophantine_enumerate(&plus_one)?;
    outcome(
        found.is_empty() && stable,
        json!({
            "equation": eq,
            "solutions": found,
            "enlarged_box_agrees": stable,
            "plus_one_constant_variant": {
                "constant": 1,
                "solutions": plus_one_found,
                "note": "with constant +1 the joint system has solutions, each of square -2 rather than 2",
            },
        }),
    )
}

fn kappa_claim(config: &Config) -> ClaimResult {
    let search = kappa_search(config.slice_prime, config.seed, SLICE_RETRY_BUDGET)?;
    let passed = search.accepted.is_some();
    outcome(passed, serde_json::to_value(&search)?)
}

fn dimension_ledger_claim(_: &Config) -> ClaimResult {
    let rows = dimension_ledger();
    outcome(rows.iter().all(|r| r.holds), serde_json::to_value(&rows)?)
}
