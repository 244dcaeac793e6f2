//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;

use mcg_core::abelian::{abelian_invariants, det, mat_mul, relation_matrix, smith_normal_form};
use mcg_core::homology::{check_equation, check_presentation, evaluate};
use mcg_core::morphism::{
    apply_gen_map, collapse_matrix, g2_generator_map, kernel_generators, verify_gen_map,
    wajnryb_relators,
};
use mcg_core::presentation::{
    lantern_relation, presentation, star_lemma_words, star_rhs, RelationKind,
};
use mcg_core::rewrite::{check_script, verify_library, ScriptLibrary};
use mcg_core::scripts::shipped_scripts;
use mcg_core::surface::{make_signature, CurveConfiguration, SurfaceSignature};
use mcg_core::word::Word;

/// The verification grid: 1 <= g <= 4, 0 <= n <= 3, N >= 1.
fn grid() -> Vec<SurfaceSignature> {
    let mut out = Vec::new();
    for g in 1..=4 {
        for n in 0..=3 {
            if let Ok(sig) = make_signature(g, n) {
                out.push(sig);
            }
        }
    }
    out
}

fn report(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion}: PASS ({elapsed:.2?})");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its time budget: {elapsed:.2?} > {budget:.2?}"
    );
}

#[test]
fn criterion_1_presentation_shape() {
    let t = Instant::now();

    let sig = make_signature(2, 1).unwrap();
    let config = CurveConfiguration::for_signature(&sig);
    let p = presentation(&sig, &config, true);
    assert_eq!(p.generators.len(), 11);
    assert_eq!(
        p.relations.iter().filter(|r| r.kind == RelationKind::Handle).count(),
        1
    );
    assert_eq!(
        p.relations.iter().filter(|r| r.kind == RelationKind::Star).count(),
        21
    );

    let sig = make_signature(2, 0).unwrap();
    let config = CurveConfiguration::for_signature(&sig);
    let p = presentation(&sig, &config, true);
    assert_eq!(p.generators.len(), 6);
    assert_eq!(
        p.relations.iter().filter(|r| r.kind == RelationKind::Star).count(),
        6
    );

    let sig = make_signature(1, 1).unwrap();
    let config = CurveConfiguration::for_signature(&sig);
    let p = presentation(&sig, &config, true);
    assert_eq!(p.generators.len(), 2);
    assert_eq!(p.relations.len(), 1);
    let lhs: Word = "a1 b a1".parse().unwrap();
    let rhs: Word = "b a1 b".parse().unwrap();
    assert!(p.relations[0].same_unordered(&lhs, &rhs));

    report("1 (presentation shape)", t, Duration::from_secs(1));
}

#[test]
fn criterion_2_oracle_consistency() {
    let t = Instant::now();
    for sig in grid() {
        let config = CurveConfiguration::for_signature(&sig);
        let r = check_presentation(&config);
        assert!(
            r.pass,
            "oracle failures at {sig}: {:?}",
            r.failures()
        );
    }
    report("2 (oracle consistency on the grid)", t, Duration::from_secs(30));
}

#[test]
fn criterion_3_derived_identities() {
    let t = Instant::now();
    for sig in grid() {
        let config = CurveConfiguration::for_signature(&sig);
        for (i, j, k) in sig.enumerate_good_triples() {
            let l = lantern_relation(&sig, i, j, k).unwrap();
            assert!(check_equation(&config, &l), "lantern L_{i}_{j}_{k} fails at {sig}");
            let (x1, x2, x3) = star_lemma_words(i, j, k);
            let lhs = evaluate(&config, &star_rhs(i, j, k));
            let rhs = evaluate(&config, &Word::concat(&[&x1, &x2, &x3]));
            assert_eq!(lhs, rhs, "star word identity fails at {sig} ({i},{j},{k})");
        }
        for i in 1..=sig.legs() {
            for j in 1..=sig.legs() {
                let p: Word = format!("a{i} a{j} b").parse::<Word>().unwrap().pow(4);
                let q: Word = format!("a{i} b a{j}").parse::<Word>().unwrap().pow(4);
                assert_eq!(
                    evaluate(&config, &p),
                    evaluate(&config, &q),
                    "fourth-power identity fails at {sig} ({i},{j})"
                );
            }
        }
    }
    report("3 (lanterns and star-lemma identities)", t, Duration::from_secs(30));
}

#[test]
fn criterion_4_abelianization() {
    let t = Instant::now();
    let cases: [(i64, i64, &str); 7] = [
        (1, 1, "Z"),
        (2, 0, "Z/10"),
        (2, 1, "Z/10"),
        (2, 2, "Z/10"),
        (3, 0, "trivial"),
        (3, 1, "trivial"),
        (4, 0, "trivial"),
    ];
    for (g, n, expect) in cases {
        let sig = make_signature(g, n).unwrap();
        let config = CurveConfiguration::for_signature(&sig);
        let pres = presentation(&sig, &config, true);
        let inv = abelian_invariants(&pres);
        assert_eq!(inv.to_string(), expect, "abelianization at ({g},{n})");
    }
    report("4 (abelianization values)", t, Duration::from_secs(30));
}

#[test]
fn criterion_5_script_replay() {
    let t = Instant::now();
    let sig = make_signature(3, 1).unwrap();
    let config = CurveConfiguration::for_signature(&sig);
    let pres = presentation(&sig, &config, true);
    let scripts = shipped_scripts(&sig);
    assert!(!scripts.is_empty());
    let mut library = ScriptLibrary::new();
    let mut checked = 0usize;
    for script in &scripts {
        check_script(&pres, &mut library, script)
            .unwrap_or_else(|e| panic!("script {} fails: {e}", script.name));
        checked += 1;
    }
    // minimum shipped set is present
    for needed in [
        "star_x2_1_2",
        "star_comm12_1_2",
        "star_comm13_1_2_3",
        "star_comm23_1_2_3",
        "star_prod_1_2_3",
        "star_sq_1_2",
        "star_four_1_2",
        "star_rot4_1_2",
        "lantern_1_2_4",
        "gen_ak_1_3",
        "psi_theta",
        "conj_h_a1",
        "conj_h_c1_2",
        "conj_h_a4",
        "conj_h_a2",
        "conj_hx_a2",
        "kernel_b_inv_x0",
        "kernel_a1_x1",
    ] {
        assert!(
            library.contains(needed),
            "library is missing required claim {needed}"
        );
    }
    let report_lib = verify_library(&config, &library);
    assert!(
        report_lib.pass,
        "library claims failing the oracle: {:?}",
        report_lib.failures()
    );
    println!("  replayed {checked} scripts, library size {}", library.len());
    report("5 (derivation script replay)", t, Duration::from_secs(10));
}

#[test]
fn criterion_6_boundary_capping() {
    let t = Instant::now();
    for sig in grid() {
        if sig.boundary_count() == 0 {
            continue;
        }
        let Ok(map) = g2_generator_map(&sig) else {
            // only (1,1) has a degenerate target
            assert_eq!((sig.genus(), sig.boundary_count()), (1, 1));
            continue;
        };
        let src = CurveConfiguration::for_signature(&sig);
        let tgt = CurveConfiguration::for_signature(map.target());
        let rep = verify_gen_map(&map, &src, &tgt, 100, 20);
        assert!(rep.pass, "capping map fails at {sig}: {:?}", rep.failures());
        let kernel = kernel_generators(&sig).unwrap();
        for (idx, x) in kernel.x.iter().enumerate() {
            assert!(
                apply_gen_map(&map, x).is_empty(),
                "kernel generator x{idx} does not map to 1 at {sig}"
            );
        }
        assert!(apply_gen_map(&map, &kernel.d_n).is_empty());
        let _ = collapse_matrix(&sig);
        // Wajnryb relators are matrix identities
        for eq in wajnryb_relators(&sig) {
            assert!(check_equation(&src, &eq), "{} fails at {sig}", eq.name);
        }
    }
    report("6 (boundary capping morphism)", t, Duration::from_secs(10));
}

#[test]
fn criterion_7_snf_properties() {
    let t = Instant::now();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for round in 0..1000 {
        let rows = (next() % 8 + 1) as usize;
        let cols = (next() % 8 + 1) as usize;
        let m: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| BigInt::from((next() % 19) as i64 - 9))
                    .collect()
            })
            .collect();
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(mat_mul(&mat_mul(&u, &m), &v), d, "U*M*V != D in round {round}");
        assert_eq!(det(&u).abs(), BigInt::from(1));
        assert_eq!(det(&v).abs(), BigInt::from(1));
        for k in 0..rows.min(cols).saturating_sub(1) {
            if d[k + 1][k + 1] != BigInt::from(0) {
                assert!(
                    (&d[k + 1][k + 1] % &d[k][k]) == BigInt::from(0),
                    "divisibility chain fails in round {round}"
                );
            }
        }
    }
    report("7 (Smith normal form properties)", t, Duration::from_secs(10));
}

#[test]
fn criterion_8_json_round_trip() {
    let t = Instant::now();
    for sig in grid() {
        let config = CurveConfiguration::for_signature(&sig);
        let back = CurveConfiguration::from_json(&config.to_json()).unwrap();
        assert_eq!(config, back, "configuration round-trip at {sig}");
        for handles in [true, false] {
            let pres = presentation(&sig, &config, handles);
            let back = mcg_core::presentation::Presentation::from_json(&pres.to_json()).unwrap();
            assert_eq!(pres, back, "presentation round-trip at {sig}");
        }
    }
    report("8 (json round-trips)", t, Duration::from_secs(30));
}

#[test]
fn relation_matrix_has_row_per_relation() {
    // small cross-check that the exponent-sum matrix is aligned
    let sig = make_signature(2, 0).unwrap();
    let config = CurveConfiguration::for_signature(&sig);
    let pres = presentation(&sig, &config, true);
    let m = relation_matrix(&pres);
    assert_eq!(m.len(), pres.relations.len());
    assert_eq!(m[0].len(), pres.generators.len());
}
