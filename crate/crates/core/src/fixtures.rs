//! Golden files. Published fixtures are transcribed by hand from printed
//! expansions and must agree with the computed object before they are ever
//! written; derived fixtures freeze values first obtained by computation.
//!
//! File layout: one provenance header line, then the canonical text.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::almostsym::AlmostSym;
use crate::comb::{Composition, Partition};
use crate::hhl::{stable_e_with, Conventions};
use crate::qt::QtScalar;
use crate::stablelimit::{
    a_function, gamma_mu, measured_weight, stable_e_pair, weight_sparse, IndexedPair,
};
use crate::symfunc::hall_littlewood_p;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Published,
    Derived,
}

pub struct Fixture {
    pub name: &'static str,
    pub source: Source,
    /// What the header names: the printed label or the deriving oracle.
    pub origin: &'static str,
    /// Hand transcription, published fixtures only.
    pub transcription: Option<fn() -> Result<String, Error>>,
    pub compute: fn(Conventions) -> Result<String, Error>,
}

impl Fixture {
    pub fn header(&self) -> String {
        match self.source {
            Source::Published => format!("# source: published {}", self.origin),
            Source::Derived => format!("# source: derived {}", self.origin),
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.txt", self.name)
    }

    pub fn render(&self, body: &str) -> String {
        format!("{}\n{}\n", self.header(), body)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub source: Source,
    pub status: String,
    pub diff: Option<String>,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn s(x: &str) -> QtScalar {
    QtScalar::parse(x).expect("literal scalar")
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("literal partition")
}

fn c(v: &[u32]) -> Composition {
    Composition::new(v.to_vec())
}

fn term(a: &[u32], l: &[u32], coeff: &str) -> ((Vec<u32>, Partition), QtScalar) {
    ((a.to_vec(), p(l)), s(coeff))
}

/// `sum coeff * x^a * P_lambda[x_{k+1} + ..]`.
fn from_hlp(k: usize, terms: &[(&[u32], &[u32], &str)]) -> AlmostSym {
    let mut out = AlmostSym::from_terms(k, []);
    for (a, l, coeff) in terms {
        let pl = hall_littlewood_p(&p(l)).scale(&s(coeff));
        for (nu, v) in pl.terms() {
            out.add_term((a.to_vec(), nu.clone()), v);
        }
    }
    out
}

fn printed_e1() -> Result<String, Error> {
    Ok(AlmostSym::from_terms(1, [term(&[1], &[], "1")]).to_text())
}

fn printed_e20() -> Result<String, Error> {
    Ok(AlmostSym::from_terms(
        1,
        [
            term(&[2], &[], "1"),
            term(&[1], &[1], "q^-1*(1-t)/(1-q^-1*t)"),
        ],
    )
    .to_text())
}

fn printed_e02() -> Result<String, Error> {
    Ok(AlmostSym::from_terms(
        2,
        [
            term(&[0, 2], &[], "1"),
            term(&[2, 0], &[], "1-t"),
            term(&[1, 1], &[], "(1-q^-1*t+q^-1)/(1-q^-1*t)*(1-t)"),
            term(&[0, 1], &[1], "q^-1*(1-t)/(1-q^-1*t)"),
            term(&[1, 0], &[1], "q^-1*(1-t)^2/(1-q^-1*t)"),
        ],
    )
    .to_text())
}

fn printed_e22() -> Result<String, Error> {
    let c1 = "q^-1*(1-t)/(1-q^-1*t)";
    Ok(AlmostSym::from_terms(
        2,
        [
            term(&[2, 2], &[], "1"),
            term(&[2, 1], &[1], c1),
            term(&[1, 2], &[1], c1),
            term(
                &[1, 1],
                &[1, 1],
                "q^-2*(1-t)^2*(1+t)/(q^-2*t^3-q^-1*t^2-q^-1*t+1)",
            ),
        ],
    )
    .to_text())
}

fn printed_pair_empty_2() -> Result<String, Error> {
    from_hlp(0, &[(&[], &[2], "1"), (&[], &[1, 1], "q^-1/(1-q^-1*t)")]).to_hlp_text()
}

fn printed_pair_0_2() -> Result<String, Error> {
    from_hlp(
        1,
        &[
            (&[0], &[2], "1"),
            (&[2], &[], "1-t"),
            (&[0], &[1, 1], "q^-1/(1-q^-1*t)"),
            (&[1], &[1], "(1+q^-1)*(1-t)/(1-q^-1*t)"),
        ],
    )
    .to_hlp_text()
}

fn printed_pair_1_11() -> Result<String, Error> {
    from_hlp(1, &[(&[1], &[1, 1], "1")]).to_hlp_text()
}

fn pair(mu: &[u32], lambda: &[u32]) -> IndexedPair {
    IndexedPair::new(c(mu), p(lambda))
}

fn weight_text(w: &[QtScalar]) -> String {
    serde_json::to_string(&weight_sparse(w)).expect("plain data")
}

fn gamma_text(mu: &[u32]) -> Result<String, Error> {
    Ok(gamma_mu(&c(mu))?.to_string())
}

/// Every fixture, published first.
pub fn registry() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "stable_e_1",
            source: Source::Published,
            origin: "stable limit E~(1)",
            transcription: Some(printed_e1),
            compute: |conv| Ok(stable_e_with(&c(&[1]), conv).to_text()),
        },
        Fixture {
            name: "stable_e_2_0",
            source: Source::Published,
            origin: "stable limit E~(2,0)",
            transcription: Some(printed_e20),
            compute: |conv| Ok(stable_e_with(&c(&[2, 0]), conv).to_text()),
        },
        Fixture {
            name: "stable_e_0_2",
            source: Source::Published,
            origin: "stable limit E~(0,2)",
            transcription: Some(printed_e02),
            compute: |conv| Ok(stable_e_with(&c(&[0, 2]), conv).to_text()),
        },
        Fixture {
            name: "stable_e_2_2",
            source: Source::Published,
            origin: "stable limit E~(2,2)",
            transcription: Some(printed_e22),
            compute: |conv| Ok(stable_e_with(&c(&[2, 2]), conv).to_text()),
        },
        Fixture {
            name: "pair_empty_2",
            source: Source::Published,
            origin: "weight basis element E~(∅|2)",
            transcription: Some(printed_pair_empty_2),
            compute: |_| stable_e_pair(&pair(&[], &[2])).to_hlp_text(),
        },
        Fixture {
            name: "pair_0_2",
            source: Source::Published,
            origin: "weight basis element E~(0|2)",
            transcription: Some(printed_pair_0_2),
            compute: |_| stable_e_pair(&pair(&[0], &[2])).to_hlp_text(),
        },
        Fixture {
            name: "pair_1_1_1",
            source: Source::Published,
            origin: "weight basis element E~(1|1,1)",
            transcription: Some(printed_pair_1_11),
            compute: |_| stable_e_pair(&pair(&[1], &[1, 1])).to_hlp_text(),
        },
        Fixture {
            name: "gamma_0_2",
            source: Source::Derived,
            origin: "gamma_mu (sigma~ against A)",
            transcription: None,
            compute: |_| gamma_text(&[0, 2]),
        },
        Fixture {
            name: "gamma_2_0",
            source: Source::Derived,
            origin: "gamma_mu (sigma~ against A)",
            transcription: None,
            compute: |_| gamma_text(&[2, 0]),
        },
        Fixture {
            name: "gamma_1_2",
            source: Source::Derived,
            origin: "gamma_mu (sigma~ against A)",
            transcription: None,
            compute: |_| gamma_text(&[1, 2]),
        },
        Fixture {
            name: "gamma_0_1_1",
            source: Source::Derived,
            origin: "gamma_mu (sigma~ against A)",
            transcription: None,
            compute: |_| gamma_text(&[0, 1, 1]),
        },
        Fixture {
            name: "gamma_1_0_2",
            source: Source::Derived,
            origin: "gamma_mu (sigma~ against A)",
            transcription: None,
            compute: |_| gamma_text(&[1, 0, 2]),
        },
        Fixture {
            name: "a_2",
            source: Source::Derived,
            origin: "A_lambda (sigma~ of E~_lambda)",
            transcription: None,
            compute: |_| Ok(a_function(&p(&[2])).to_text()),
        },
        Fixture {
            name: "a_2_1",
            source: Source::Derived,
            origin: "A_lambda (sigma~ of E~_lambda)",
            transcription: None,
            compute: |_| Ok(a_function(&p(&[2, 1])).to_text()),
        },
        Fixture {
            name: "a_3",
            source: Source::Derived,
            origin: "A_lambda (sigma~ of E~_lambda)",
            transcription: None,
            compute: |_| Ok(a_function(&p(&[3])).to_text()),
        },
        Fixture {
            name: "weight_pair_0_2",
            source: Source::Derived,
            origin: "truncated Y weight of E~(0|2)",
            transcription: None,
            compute: |_| {
                Ok(weight_text(&measured_weight(
                    &stable_e_pair(&pair(&[0], &[2])),
                    3,
                )?))
            },
        },
        Fixture {
            name: "weight_pair_1_1_1",
            source: Source::Derived,
            origin: "truncated Y weight of E~(1|1,1)",
            transcription: None,
            compute: |_| {
                Ok(weight_text(&measured_weight(
                    &stable_e_pair(&pair(&[1], &[1, 1])),
                    3,
                )?))
            },
        },
    ]
}

fn diff(expected: &str, found: &str) -> String {
    let mut out = String::new();
    let (e, f): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), found.lines().collect());
    for i in 0..e.len().max(f.len()) {
        let (a, b) = (e.get(i).copied(), f.get(i).copied());
        if a != b {
            if let Some(a) = a {
                out.push_str(&format!("-{a}\n"));
            }
            if let Some(b) = b {
                out.push_str(&format!("+{b}\n"));
            }
        }
    }
    out
}

fn outcome(fx: &Fixture, d: Option<String>) -> FixtureCheck {
    FixtureCheck {
        name: fx.name.into(),
        source: fx.source,
        status: if d.is_none() { "pass" } else { "fail" }.into(),
        diff: d,
    }
}

/// Computed value against the hand transcription, without touching disk.
pub fn check_transcription(fx: &Fixture, conv: Conventions) -> FixtureCheck {
    let Some(tr) = fx.transcription else {
        return outcome(fx, None);
    };
    let d = match (tr(), (fx.compute)(conv)) {
        (Ok(e), Ok(f)) if e == f => None,
        (Ok(e), Ok(f)) => Some(diff(&e, &f)),
        (Err(e), _) | (_, Err(e)) => Some(format!("error: {e}")),
    };
    outcome(fx, d)
}

/// Byte comparison of the stored file with the computed value; published
/// fixtures must also match their transcription.
pub fn check_one(fx: &Fixture, dir: &Path) -> FixtureCheck {
    let tr = check_transcription(fx, Conventions::PINNED);
    if !tr.passed() {
        return tr;
    }
    let path = dir.join(fx.file_name());
    let stored = match fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return outcome(fx, Some(format!("cannot read {}: {e}", path.display()))),
    };
    let d = match (fx.compute)(Conventions::PINNED) {
        Ok(body) => {
            let want = fx.render(&body);
            (stored != want).then(|| diff(&stored, &want))
        }
        Err(e) => Some(format!("error: {e}")),
    };
    outcome(fx, d)
}

pub fn check(dir: &Path) -> Vec<FixtureCheck> {
    registry().iter().map(|f| check_one(f, dir)).collect()
}

/// Writes every fixture whose computed value agrees with its transcription;
/// returns the names written.
pub fn freeze(dir: &Path) -> Result<Vec<String>, Error> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for fx in registry() {
        let tr = check_transcription(&fx, Conventions::PINNED);
        if !tr.passed() {
            return Err(Error::IdentityFailed(format!(
                "{} disagrees with its transcription:\n{}",
                fx.name,
                tr.diff.unwrap_or_default()
            )));
        }
        let body = (fx.compute)(Conventions::PINNED)?;
        let path = dir.join(fx.file_name());
        let text = fx.render(&body);
        if fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            fs::write(&path, text)?;
            written.push(fx.name.to_string());
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcriptions_match_computation() {
        for fx in registry().iter().filter(|f| f.source == Source::Published) {
            let r = check_transcription(fx, Conventions::PINNED);
            assert!(r.passed(), "{}: {:?}", fx.name, r.diff);
        }
    }

    #[test]
    fn swapped_cell_factor_breaks_a_transcription() {
        let failing: Vec<&str> = registry()
            .iter()
            .filter(|f| !check_transcription(f, Conventions::PERTURBED_GAMMA).passed())
            .map(|f| f.name)
            .collect();
        assert_eq!(failing, vec!["stable_e_2_2"]);
    }

    #[test]
    fn headers_and_names_are_unique() {
        let all = registry();
        let mut names: Vec<&str> = all.iter().map(|f| f.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert!(all[0].render("x").starts_with("# source: published "));
    }

    #[test]
    fn diff_marks_both_sides() {
        assert_eq!(diff("a\nb\n", "a\nc\n"), "-b\n+c\n");
    }
}
