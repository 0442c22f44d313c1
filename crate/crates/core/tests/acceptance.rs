//! Acceptance criteria, one line per criterion.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use fcy_core::algebra::{quotient_basis, Element, LinearMap};
use fcy_core::analysis::{analyze, AnalyzeOptions, Verdict};
use fcy_core::category::{base_category, corrupt_kappa, roundtrip, serre_structure, verify_serre};
use fcy_core::constructions::{cobweb_rotation, dynkin, dynkin_nakayama_reference, DynkinType};
use fcy_core::frobenius::{
    automorphism_from_arrow_images, compose_da, homogeneity_witness, intertwining_unit, is_inner,
    is_unital, multiplicativity_witness, CharSpec,
};
use fcy_core::linalg::Field;
use fcy_core::quiver::Presentation;
use fcy_core::FcyError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load(name: &str) -> Presentation {
    Presentation::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, label: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let spent = start.elapsed();
    ensure(spent < limit, || {
        format!("{label} took {spent:?}, limit {limit:?}")
    })?;
    Ok(out)
}

fn dynkin_battery() -> Outcome {
    let cases = [
        ("dynkin:A:2", 2, 1, 3),
        ("dynkin:A:3", 2, 2, 4),
        ("dynkin:A:4", 2, 3, 5),
        ("dynkin:A:5", 2, 4, 6),
        ("dynkin:D:4", 1, 2, 3),
        ("dynkin:D:5", 2, 6, 8),
        ("dynkin:E:6", 2, 10, 12),
    ];
    let mut seen = Vec::new();
    for (name, k, n, m) in cases {
        let a = timed(Duration::from_secs(10), name, || run_default(name, "sgn"))?;
        let r = &a.report;
        ensure(r.k == Some(k) && r.n == Some(n) && r.m == Some(m), || {
            format!(
                "{name}: got k={:?} N={:?} m={:?}, want ({k}, {n}, {m})",
                r.k, r.n, r.m
            )
        })?;
        ensure(r.cy == Some([n, m]), || format!("{name}: cy {:?}", r.cy))?;
        seen.push(format!("{}=({n},{m})", &name[7..]));
    }
    let prime = AnalyzeOptions {
        field: Field::Prime(1_000_003),
        ..Default::default()
    };
    for (name, n, m) in [("dynkin:E:7", 8, 9), ("dynkin:E:8", 14, 15)] {
        let a = timed(Duration::from_secs(600), name, || run(name, "sgn", &prime))?;
        let r = &a.report;
        ensure(r.k == Some(1) && r.n == Some(n) && r.m == Some(m), || {
            format!("{name}: got k={:?} N={:?} m={:?}", r.k, r.n, r.m)
        })?;
        seen.push(format!("{}=({n},{m})", &name[7..]));
    }
    Ok(seen.join(" "))
}

fn nakayama_order() -> Outcome {
    let a1 = run_default("dynkin:A:1", "tr");
    ensure(a1.nakayama.unwrap().alpha.is_identity(), || {
        "A1: alpha is not the identity".into()
    })?;
    let cases = [
        (DynkinType::A, 2),
        (DynkinType::A, 3),
        (DynkinType::A, 4),
        (DynkinType::A, 5),
        (DynkinType::D, 4),
        (DynkinType::D, 5),
        (DynkinType::E, 6),
    ];
    for (ty, n) in cases {
        let name = format!("dynkin:{ty}:{n}");
        let a = run_default(&name, "tr");
        let alg = &a.algebra;
        let alpha = &a.nakayama.as_ref().unwrap().alpha;
        ensure(is_inner(alg, alpha, 0).is_none(), || {
            format!("{name}: alpha is inner")
        })?;
        let square = alpha.compose(alpha);
        let u =
            is_inner(alg, &square, 0).ok_or_else(|| format!("{name}: alpha^2 not shown inner"))?;
        check_intertwiner(
            alg,
            &square,
            &LinearMap::identity(alg.field(), alg.dim()),
            &u,
        )
        .map_err(|e| format!("{name}: alpha^2 certificate: {e}"))?;

        let (q, data) = dynkin(ty, n, None).unwrap();
        let reference = dynkin_nakayama_reference(&q, &data).unwrap();
        let images: Vec<Element> = reference
            .arrow_images
            .iter()
            .map(|&(sign, arrow)| {
                alg.basis_element(alg.arrow_index(arrow))
                    .scale(&alg.field().from_i64(sign))
            })
            .collect();
        let beta = automorphism_from_arrow_images(alg, &reference.vertex_perm, &images)
            .map_err(|e| format!("{name}: reference map: {e}"))?;
        let v = intertwining_unit(alg, alpha, &beta, 0).ok_or_else(|| {
            format!("{name}: alpha and beta differ by more than an inner automorphism")
        })?;
        check_intertwiner(alg, alpha, &beta, &v)
            .map_err(|e| format!("{name}: reference certificate: {e}"))?;
    }
    Ok("alpha not inner, alpha^2 inner, alpha ~ beta for A2-A5, D4, D5, E6; A1 identity".into())
}

/// Checks `α(a)·u = u·β(a)` on all basis elements and that `u` is a unit.
fn check_intertwiner(
    alg: &fcy_core::algebra::FiniteDimAlgebra,
    alpha: &LinearMap,
    beta: &LinearMap,
    u: &Element,
) -> Result<(), String> {
    for a in 0..alg.dim() {
        let lhs = alg.multiply(&alpha.columns[a], u);
        let rhs = alg.multiply(u, &beta.columns[a]);
        ensure(lhs == rhs, || format!("fails on {}", alg.basis()[a].label))?;
    }
    let mut left = fcy_core::linalg::DenseMatrix::zeros(alg.field(), alg.dim(), alg.dim());
    for j in 0..alg.dim() {
        let col = alg.multiply(u, &alg.basis_element(j));
        for (i, c) in col.terms() {
            left.set(*i, j, c.clone());
        }
    }
    ensure(fcy_core::linalg::rank(&left) == alg.dim(), || {
        "u is not a unit".into()
    })
}

fn higher_type_a() -> Outcome {
    let mut seen = Vec::new();
    for (d, s) in [(1i64, 3i64), (1, 4), (2, 3), (2, 4), (3, 2)] {
        let name = format!("typeA:d={d}:s={s}");
        let a = timed(Duration::from_secs(30), &name, || {
            run_default(&name, "sgn^d")
        })?;
        let r = &a.report;
        ensure(r.k == Some((d + 1) as usize) && r.n == Some(s - 1), || {
            format!("{name}: k={:?} N={:?}", r.k, r.n)
        })?;
        ensure(r.cy == Some([d * (s - 1), s + d]), || {
            format!("{name}: cy {:?}", r.cy)
        })?;
        seen.push(format!("({d},{s})->{:?}", r.cy.unwrap()));
    }
    Ok(seen.join(" "))
}

fn cross_family() -> Outcome {
    for s in 3..=5usize {
        let t = run_default(&format!("typeA:d=1:s={s}"), "sgn^d");
        let c = run_default(&format!("dynkin:A:{s}"), "sgn");
        let key = |r: &fcy_core::analysis::CyReport| (r.k, r.n, r.m);
        ensure(key(&t.report) == key(&c.report), || {
            format!(
                "s={s}: typeA {:?} vs classical {:?}",
                key(&t.report),
                key(&c.report)
            )
        })?;
        // vertex (x1, x2) of the type A simplex is vertex x2 + 1 of A_s
        let rename = |label: &str| -> String {
            let x2: usize = label.split('.').nth(1).unwrap().parse().unwrap();
            (x2 + 1).to_string()
        };
        let from_type_a: std::collections::BTreeMap<_, _> = t
            .algebra
            .graded_dimensions()
            .into_iter()
            .map(|((i, j, p), n)| ((rename(&i), rename(&j), p), n))
            .collect();
        ensure(from_type_a == c.algebra.graded_dimensions(), || {
            format!("s={s}: graded dimensions differ")
        })?;
    }
    Ok("typeA(1,s) = Pi(A_s) for s = 3, 4, 5".into())
}

fn cobweb() -> Outcome {
    let a = timed(Duration::from_secs(60), "cobweb", || {
        run_default("cobweb", "tr")
    })?;
    let r = &a.report;
    let orbit = ["d1", "d5", "d9", "d3", "d7"];
    let ell: Vec<i64> = orbit.iter().map(|v| r.ell[*v][0]).collect();
    ensure(ell == vec![2, 1, 2, 1, 1], || {
        format!("ell on the orbit of d1: {ell:?}")
    })?;
    ensure(ell.iter().sum::<i64>() == 7, || "orbit sum is not 7".into())?;
    let form = a.form.as_ref().unwrap();
    ensure(form.nu == cobweb_rotation(), || format!("nu = {:?}", r.nu))?;
    ensure(r.nu[0] == ["c1", "c3", "c5", "c2", "c4"], || {
        format!("c-cycle {:?}", r.nu[0])
    })?;
    let twisted = a.twisted.as_ref().unwrap();
    let mut power = twisted.clone();
    for _ in 1..5 {
        power = compose_da(&power, twisted);
    }
    ensure(power.alpha.is_identity(), || {
        "(sigma, ell)^5 has nontrivial alpha".into()
    })?;
    ensure(power.ell.iter().all(|l| l == &vec![7]), || {
        "(sigma, ell)^5 adjuster is not 7".into()
    })?;
    ensure(
        r.k == Some(5) && r.n == Some(7) && r.cy == Some([14, 12]),
        || format!("k={:?} N={:?} cy={:?}", r.k, r.n, r.cy),
    )?;
    Ok("ell(d1,d5,d9,d3,d7) = (2,1,2,1,1), (sigma,ell)^5 = (id,7), cy = (14,12)".into())
}

fn minimality() -> Outcome {
    for strict in [false, true] {
        let opts = AnalyzeOptions {
            allow_inner: !strict,
            ..Default::default()
        };
        let r = run("dynkin:A:3", "sgn", &opts).report;
        ensure(r.k != Some(1), || "k = 1 reported".into())?;
        ensure((r.n, r.m) != (Some(1), Some(2)), || {
            "(1, 2) reported".into()
        })?;
        if !strict {
            ensure(r.k == Some(2) && r.cy == Some([2, 4]), || {
                format!("k={:?} cy={:?}", r.k, r.cy)
            })?;
        }
    }
    let a = run_default("dynkin:A:3", "sgn");
    let perm = &a.twisted.unwrap().perm;
    ensure(perm != &vec![0, 1, 2], || "alpha fixes all vertices".into())?;
    Ok("A3: k = 2, never (1, 2)".into())
}

fn negative_controls() -> Outcome {
    let r = analyze(
        &load("a2_path.json"),
        "a2-path",
        1,
        &CharSpec::Sgn,
        &AnalyzeOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::NotFrobenius && !r.frobenius, || {
        format!("verdict {:?}", r.verdict)
    })?;
    let reason = r.reason.unwrap_or_default();
    ensure(reason.starts_with("non-bijective socle"), || {
        format!("reason {reason:?}")
    })?;
    let err = analyze(
        &load("cyclic3_preprojective.json"),
        "cyclic3",
        1,
        &CharSpec::Sgn,
        &AnalyzeOptions::default(),
    );
    ensure(
        matches!(err, Err(FcyError::DimensionBoundExceeded { .. })),
        || format!("{err:?}"),
    )?;
    Ok(format!(
        "A2 path algebra: {reason}; cyclic preprojective: DimensionBoundExceeded"
    ))
}

fn property_suite() -> Outcome {
    let cases = [
        ("dynkin:A:2", "sgn"),
        ("dynkin:A:3", "sgn"),
        ("typeA:d=2:s=3", "tr"),
        ("cobweb", "tr"),
    ];
    for (name, chi) in cases {
        let a = run_default(name, chi);
        let alg = &a.algebra;
        let form = a.form.as_ref().unwrap();
        let da = a.nakayama.as_ref().unwrap();
        let twisted = a.twisted.as_ref().unwrap();
        let character = chi
            .parse::<CharSpec>()
            .unwrap()
            .resolve(a.report.d, alg.field(), &alg.presentation().projection)
            .unwrap();
        for (which, map) in [("alpha", &da.alpha), ("alpha^chi", &twisted.alpha)] {
            ensure(multiplicativity_witness(alg, map, true).is_none(), || {
                format!("{name}: {which} not multiplicative")
            })?;
            ensure(is_unital(alg, map), || {
                format!("{name}: {which} not unital")
            })?;
        }
        ensure(
            trace_twist_witness(alg, form, &twisted.alpha, &character).is_none(),
            || format!("{name}: trace-twist identity fails"),
        )?;
        ensure(gram_is_nondegenerate(alg, form), || {
            format!("{name}: B is degenerate")
        })?;
        let order = a.order.as_ref().unwrap();
        let bound = order.alpha_order_strict.unwrap_or(order.k);
        let mut power = twisted.clone();
        for j in 1..=bound {
            if j > 1 {
                power = compose_da(&power, twisted);
            }
            ensure(homogeneity_witness(alg, &power).is_none(), || {
                format!("{name}: power {j} not homogeneous")
            })?;
            if power.alpha.is_identity() {
                ensure(power.ell.iter().all(|l| l == &power.ell[0]), || {
                    format!("{name}: alpha^{j} = id with non-constant adjuster")
                })?;
            }
        }
        for seed in 1..=8 {
            let opts = AnalyzeOptions {
                form_seed: Some(seed),
                ..Default::default()
            };
            let r = run(name, chi, &opts).report;
            ensure((r.k, r.n) == (a.report.k, a.report.n), || {
                format!("{name}: form seed {seed} gives k={:?} N={:?}", r.k, r.n)
            })?;
        }
    }
    Ok("Pi(A2), Pi(A3), typeA(2,3), cobweb: all identities hold, 8 form seeds agree".into())
}

fn category_layer() -> Outcome {
    let twistorno = quotient_basis(&load("twistorno.json"), Field::Rational, 64).unwrap();
    let pi3 = run_default("dynkin:A:3", "sgn");
    for (label, alg) in [("twistorno", &twistorno), ("Pi(A3)", &pi3.algebra)] {
        let r = roundtrip(&base_category(alg).unwrap(), -3, 3).map_err(|e| e.to_string())?;
        ensure(r.isomorphic, || {
            format!("{label}: round trip mismatch {:?}", r.mismatch)
        })?;
    }
    let cob = run_default("cobweb", "tr");
    for (label, a, chi) in [("Pi(A3)", &pi3, -1), ("cobweb", &cob, 1)] {
        let alg = &a.algebra;
        let c = base_category(alg).unwrap();
        let v = alg.field().from_i64(chi);
        let mut sd = serre_structure(
            alg,
            &c,
            a.form.as_ref().unwrap(),
            a.twisted.as_ref().unwrap(),
            &v,
        );
        let report = verify_serre(&c, &sd);
        ensure(report.passed(), || format!("{label}: {report:?}"))?;
        let key = *sd.kappa.keys().next().unwrap();
        corrupt_kappa(&mut sd, key, 0, 0, &alg.field().from_i64(3));
        ensure(!verify_serre(&c, &sd).passed(), || {
            format!("{label}: corrupted kappa passes")
        })?;
    }
    Ok(
        "round trips on twistorno and Pi(A3) in [-3,3]; Serre checks pass; corruption detected"
            .into(),
    )
}

fn permuted(pres: &Presentation, seed: u64) -> Presentation {
    let mut file = pres.to_file();
    file.arrows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    file.arrows.reverse();
    file.into_presentation().unwrap()
}

fn determinism() -> Outcome {
    for (name, chi) in [
        ("dynkin:A:3", "sgn"),
        ("typeA:d=2:s=3", "tr"),
        ("cobweb", "tr"),
    ] {
        let first = run_default(name, chi).report.to_json();
        let second = run_default(name, chi).report.to_json();
        ensure(first == second, || format!("{name}: reports differ"))?;
        let pres = family(name).presentation().unwrap();
        let base: BTreeSet<String> = quotient_basis(&pres, Field::Rational, 64)
            .unwrap()
            .basis_labels()
            .into_iter()
            .collect();
        for seed in 0..3 {
            let other: BTreeSet<String> =
                quotient_basis(&permuted(&pres, seed), Field::Rational, 64)
                    .unwrap()
                    .basis_labels()
                    .into_iter()
                    .collect();
            ensure(base == other, || {
                format!("{name}: arrow permutation {seed} changes the basis")
            })?;
        }
    }
    Ok("byte-identical reports; arrow permutations keep the normal-word basis".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Dynkin battery", dynkin_battery),
        ("Nakayama order check", nakayama_order),
        ("higher type A", higher_type_a),
        ("cross-family consistency", cross_family),
        ("cobweb", cobweb),
        ("minimality guard", minimality),
        ("negative controls", negative_controls),
        ("property suite", property_suite),
        ("category layer", category_layer),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let spent = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {name} ({spent:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {name} ({spent:.2?}): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
