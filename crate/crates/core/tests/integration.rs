use std::fs;

use stablemac::almostsym::AlmostSym;
use stablemac::comb::{Composition, Partition};
use stablemac::daha::{oracle_e, weight_alpha_tilde};
use stablemac::fixtures::{self, Source};
use stablemac::hhl::{convergence_witness, dump_fillings, hhl_e, stable_e};
use stablemac::stablelimit::{
    a_function, admissible_pairs, basis_certificate, gamma_mu, limit_y, measured_weight,
    pair_weight, stable_e_pair, weight_sparse, IndexedPair,
};
use stablemac::QtScalar;

fn c(v: &[u32]) -> Composition {
    Composition::new(v.to_vec())
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn s(x: &str) -> QtScalar {
    QtScalar::parse(x).unwrap()
}

#[test]
fn one_variable_agreement() {
    assert_eq!(hhl_e(&c(&[1])).to_pretty(), "x1");
    assert_eq!(stable_e(&c(&[1])).to_hlp_text().unwrap(), "x1");
    assert_eq!(oracle_e(&c(&[1])).unwrap(), hhl_e(&c(&[1])));
}

#[test]
fn stable_limit_two_zero() {
    assert_eq!(
        stable_e(&c(&[2, 0])).to_text(),
        "split=1; [2] ⊗ m[]: 1/1; [1] ⊗ m[1]: (1 - t)/(q - t)"
    );
}

#[test]
fn pair_examples_in_hall_littlewood_basis() {
    let e = stable_e_pair(&IndexedPair::new(c(&[1]), p(&[1, 1])));
    assert_eq!(e.to_hlp_text().unwrap(), "x1 * P[1,1](x2+...)");
    let a = stable_e_pair(&IndexedPair::new(Composition::empty(), p(&[2])));
    assert_eq!(
        a.to_hlp_text().unwrap(),
        "P[2](x1+...) + (1/(q - t)) * P[1,1](x1+...)"
    );
    // (0|2) collapses onto (∅|2).
    let b = stable_e_pair(&IndexedPair::new(c(&[0]), p(&[2])));
    assert!(a.equals(&b));
}

#[test]
fn frozen_weights() {
    let w = weight_alpha_tilde(&c(&[0, 2]));
    assert_eq!(weight_sparse(&w), vec![(2, "q^2*t/1".to_string())]);
    let p111 = IndexedPair::new(c(&[1]), p(&[1, 1]));
    assert_eq!(
        weight_sparse(&pair_weight(&p111)),
        vec![(1, "q*t^3/1".to_string())]
    );
    let m = measured_weight(&stable_e_pair(&p111), 3).unwrap();
    assert_eq!(weight_sparse(&m), vec![(1, "q*t^3/1".to_string())]);
    // Measured weight of E~(0|2) is identically zero.
    let z = measured_weight(&stable_e_pair(&IndexedPair::new(c(&[0]), p(&[2]))), 3).unwrap();
    assert!(z.iter().all(|x| x.is_zero()));
}

#[test]
fn frozen_gammas() {
    assert!(gamma_mu(&c(&[0, 2])).unwrap().is_one());
    assert!(gamma_mu(&c(&[2, 0])).unwrap().is_one());
    assert!(gamma_mu(&c(&[0, 1, 1])).unwrap().is_one());
    assert_eq!(gamma_mu(&c(&[1, 2])).unwrap(), s("(q - t^2)/(q - t)"));
}

#[test]
fn a_two_expansion() {
    assert_eq!(
        a_function(&p(&[2])).to_text(),
        "HLP: [2]: 1/1; [1,1]: 1/(q - t)"
    );
}

#[test]
fn higher_y_annihilates_lower_split() {
    // Y_i for i > l(mu) kills E~_(mu|lambda).
    for d in 0..=3 {
        for pair in admissible_pairs(1, d) {
            let e = stable_e_pair(&pair);
            for i in pair.mu.len() + 1..=pair.mu.len() + 2 {
                assert!(limit_y(i, &e).unwrap().is_zero(), "{pair} i={i}");
            }
        }
    }
}

#[test]
fn small_certificates() {
    let c11 = basis_certificate(1, 1);
    assert_eq!(c11.pairs, vec!["(∅|1)", "(1|∅)"]);
    assert!(c11.passed());
    let c22 = basis_certificate(2, 2);
    assert_eq!(c22.dim, 7);
    assert_eq!(c22.pairs.len(), 7);
    assert!(c22.passed());
    for d in 0..=5 {
        let c0 = basis_certificate(0, d);
        assert!(c0.passed());
        assert_eq!(c0.dim, stablemac::comb::partition_count(d));
    }
    let json = serde_json::to_value(&c22).unwrap();
    for key in ["k", "d", "pairs", "dim", "rank", "status"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn convergence_valuations_increase() {
    let w = convergence_witness(&c(&[0, 2]), 3).unwrap();
    let v: Vec<&str> = w.rows.iter().map(|r| r.valuation.as_str()).collect();
    assert_eq!(v, ["1", "2", "3", "4"]);
}

#[test]
fn dump_examples() {
    assert_eq!(dump_fillings(&c(&[1]), 1, None, false).len(), 1);
    for row in dump_fillings(&c(&[1, 1]), 2, None, false) {
        assert!(row.cells.contains("(1,1):1") && row.cells.contains("(2,1):2"));
    }
}

#[test]
fn almost_sym_json_shape() {
    let e = stable_e(&c(&[2, 0]));
    let v = serde_json::to_value(&e).unwrap();
    assert_eq!(v["split"], 1);
    let back: AlmostSym = serde_json::from_value(v).unwrap();
    assert!(back.equals(&e));
}

#[test]
fn fixture_files_are_pristine() {
    let checks = fixtures::check(&fixtures::default_dir());
    for c in &checks {
        assert!(c.passed(), "{}: {:?}", c.name, c.diff);
    }
    assert!(checks.iter().any(|c| c.source == Source::Published));
    assert!(checks.iter().any(|c| c.source == Source::Derived));
}

#[test]
fn corrupted_fixture_is_reported_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    for fx in fixtures::registry() {
        let from = fixtures::default_dir().join(fx.file_name());
        fs::copy(&from, dir.path().join(fx.file_name())).unwrap();
    }
    let target = dir.path().join("gamma_1_2.txt");
    let text = fs::read_to_string(&target).unwrap();
    fs::write(&target, text.replace("q - t^2", "q - t^3")).unwrap();
    let bad: Vec<_> = fixtures::check(dir.path())
        .into_iter()
        .filter(|c| !c.passed())
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].name, "gamma_1_2");
    let diff = bad[0].diff.as_deref().unwrap();
    assert!(
        diff.contains("-(q - t^3)/(q - t)") && diff.contains("+(q - t^2)/(q - t)"),
        "{diff}"
    );
}

#[test]
fn freeze_writes_headers() {
    let dir = tempfile::tempdir().unwrap();
    let written = fixtures::freeze(dir.path()).unwrap();
    assert!(written.contains(&"gamma_0_2".to_string()));
    let g = fs::read_to_string(dir.path().join("gamma_0_2.txt")).unwrap();
    assert!(g.starts_with("# source: derived "));
    assert_eq!(g.lines().nth(1), Some("1/1"));
    let e = fs::read_to_string(dir.path().join("stable_e_1.txt")).unwrap();
    assert!(e.starts_with("# source: published "));
    // A second freeze finds nothing new.
    assert!(fixtures::freeze(dir.path()).unwrap().is_empty());
}
