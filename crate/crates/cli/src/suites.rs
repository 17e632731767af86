//! Verification suites behind `qfaulhaber verify`.

use std::fmt::Display;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use qfaulhaber::faulhaber::{self, InverseRoute};
use qfaulhaber::lgv::{self, WeightConvention};
use qfaulhaber::qcombinatorics::{h_spec, h_spec_oracle};
use qfaulhaber::{salie, Mismatch, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Eq2,
    Lemma1,
    Inverse,
    Lgv,
    Table1,
    Props,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Eq2 => "eq2",
            Suite::Lemma1 => "lemma1",
            Suite::Inverse => "inverse",
            Suite::Lgv => "lgv",
            Suite::Table1 => "table1",
            Suite::Props => "props",
            Suite::All => "all",
        }
    }
}

/// Range overrides from the command line; `None` means the suite default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ranges {
    pub m_max: Option<usize>,
    pub n_max: Option<usize>,
    pub k_max: Option<usize>,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Mismatch>,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
}

impl VerifyReport {
    fn new(suite: &str) -> Self {
        VerifyReport { suite: suite.into(), cases: Vec::new(), passed: true }
    }

    /// Times `check` and records its verdict; a library error counts as a failure.
    fn case<E: Display>(&mut self, id: impl Into<String>, check: impl FnOnce() -> Result<Verdict, E>) {
        let id = id.into();
        let start = Instant::now();
        let verdict = match check() {
            Ok(v) => v,
            Err(e) => Verdict::fail(id.clone(), "error", e.to_string()),
        };
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let (passed, counterexample) = match verdict {
            Verdict::Pass => (true, None),
            Verdict::Fail(m) => (false, Some(m)),
        };
        self.passed &= passed;
        self.cases.push(CaseResult { id, passed, counterexample, millis });
    }

    fn absorb(&mut self, other: VerifyReport) {
        for mut c in other.cases {
            c.id = format!("{}/{}", other.suite, c.id);
            self.passed &= c.passed;
            self.cases.push(c);
        }
    }

    pub fn pass_count(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }
}

pub fn run(suite: Suite, r: &Ranges) -> VerifyReport {
    match suite {
        Suite::Eq2 => eq2(r.m_max.unwrap_or(6), r.n_max.unwrap_or(6)),
        Suite::Lemma1 => lemma1(r.m_max.unwrap_or(12), r.m_max.unwrap_or(10)),
        Suite::Inverse => inverse(r.m_max.unwrap_or(8)),
        Suite::Lgv => lgv_suite(r.k_max.unwrap_or(3), r.m_max.unwrap_or(8), r.budget),
        Suite::Table1 => table1(),
        Suite::Props => props(r.m_max.unwrap_or(10)),
        Suite::All => {
            let mut all = VerifyReport::new("all");
            for s in [Suite::Eq2, Suite::Lemma1, Suite::Inverse, Suite::Lgv, Suite::Table1, Suite::Props] {
                all.absorb(run(s, r));
            }
            all
        }
    }
}

pub fn eq2(m_max: usize, n_max: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("eq2");
    for m in 0..=m_max {
        for n in 1..=n_max {
            rep.case(format!("m={m},n={n}"), || faulhaber::verify_eq2(m, n));
        }
    }
    rep
}

pub fn lemma1(identity_m_max: usize, coeff_m_max: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("lemma1");
    for m in 0..=identity_m_max {
        rep.case(format!("identity m={m}"), || Ok::<_, String>(faulhaber::verify_lemma1(m)));
    }
    for m in 0..=coeff_m_max {
        rep.case(format!("coefficients m={m}"), || {
            faulhaber::lemma1_coefficient_check(m).map(|r| r.verdict)
        });
    }
    rep
}

pub fn inverse(dim_max: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("inverse");
    for dim in 1..=dim_max {
        rep.case(format!("dim={dim}"), || faulhaber::verify_inverse_theorem(dim));
    }
    rep
}

pub fn lgv_suite(k_max: usize, m_max: usize, budget: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("lgv");
    for k in 1..=k_max {
        for m in k..=m_max {
            rep.case(format!("triangle m={m},k={k}"), || -> Result<Verdict, String> {
                let det = faulhaber::faulhaber_p(m, k).map_err(|e| e.to_string())?;
                let lgv_det = lgv::lgv_determinant(m, k, WeightConvention::EVEN).map_err(|e| e.to_string())?;
                let brute =
                    lgv::bruteforce_family_sum(m, k, WeightConvention::EVEN, budget).map_err(|e| e.to_string())?;
                Ok(Verdict::compare("lgv determinant vs P", &lgv_det, &det)
                    .and(Verdict::compare("brute force vs P", &brute, &det)))
            });
            rep.case(format!("involution m={m},k={k}"), || lgv::involution_check(m, k, budget).map(|r| r.verdict));
        }
    }
    rep
}

pub fn table1() -> VerifyReport {
    let mut rep = VerifyReport::new("table1");
    match salie::verify_table1() {
        Ok(report) => {
            for cell in report.cells {
                rep.case(format!("g_{{{},{}}}", cell.k, cell.m), || {
                    Ok::<_, String>(Verdict::compare("fitted vs tabulated", &cell.fitted, &cell.expected))
                });
            }
        }
        Err(e) => rep.case("fit", || Err(e)),
    }
    rep
}

pub fn props(m_max: usize) -> VerifyReport {
    let mut rep = VerifyReport::new("props");
    for m in 0..=m_max {
        for k in 0..=m {
            rep.case(format!("palindromic m={m},k={k}"), || faulhaber::check_symmetry(m, k));
            rep.case(format!("nonnegative m={m},k={k}"), || faulhaber::check_nonnegativity(m, k));
        }
        rep.case(format!("P(m,0)=1 m={m}"), || {
            faulhaber::faulhaber_p(m, 0).map(|p| Verdict::compare("P_{m,0}", &p, &qfaulhaber::QPoly::from_q_i64s(&[1])))
        });
        if m >= 1 {
            rep.case(format!("P(m,m)=0 m={m}"), || {
                faulhaber::faulhaber_p(m, m).map(|p| {
                    Verdict::compare("P_{m,m}", p.as_tpoly(), &qfaulhaber::TPoly::default())
                })
            });
        }
    }
    let route_m_max = m_max.min(8);
    match InverseRoute::new(route_m_max + 1) {
        Ok(route) => {
            for m in 0..=route_m_max {
                for k in 0..=m {
                    rep.case(format!("routes m={m},k={k}"), || -> Result<Verdict, String> {
                        let det = faulhaber::faulhaber_p(m, k).map_err(|e| e.to_string())?;
                        let inv = route.p(m, k).map_err(|e| e.to_string())?;
                        Ok(Verdict::compare("determinant vs inverse", &det, &inv))
                    });
                }
            }
        }
        Err(e) => rep.case("routes", || Err(e)),
    }
    for m in 0..=5 {
        for n in 0..=5 {
            rep.case(format!("classical m={m},n={n}"), || faulhaber::verify_classical_specialization(m, n));
        }
    }
    for j in 0..=12 {
        for r in 0..=6 {
            rep.case(format!("h oracle j={j},r={r}"), || {
                h_spec_oracle(j, r).map(|o| Verdict::compare("closed form vs oracle", &h_spec(j, r), &o))
            });
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_failing_case_fails_the_report() {
        let mut rep = VerifyReport::new("demo");
        rep.case("good", || Ok::<_, String>(Verdict::Pass));
        rep.case("bad", || Ok::<_, String>(Verdict::fail("P_{2,1}", "q + 1", "1")));
        rep.case("error", || Err::<Verdict, _>("boom"));
        assert!(!rep.passed);
        assert_eq!(rep.pass_count(), 1);
        let text = crate::render_report(&rep, crate::output::OutputFormat::Text);
        assert!(text.contains("FAIL demo/bad"));
        assert!(text.contains("left:  q + 1"));
        assert!(text.contains("-- FAILED"));
    }

    #[test]
    fn all_prefixes_case_ids() {
        let rep = run(Suite::All, &Ranges { m_max: Some(2), n_max: Some(2), k_max: Some(1), budget: 1000 });
        assert!(rep.passed);
        for prefix in ["eq2/", "lemma1/", "inverse/", "lgv/", "table1/", "props/"] {
            assert!(rep.cases.iter().any(|c| c.id.starts_with(prefix)), "{prefix}");
        }
    }
}
