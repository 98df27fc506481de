//! Verification registry: every identity, bijection and announced claim in
//! the library rephrased as an executable check over a finite range.
//!
//! Checks come in two tiers. Enforced checks cover established facts; a
//! failing cell marks the whole check (and any suite containing it) as
//! failed. Report-only checks cover conjectures, open questions and claims
//! under scrutiny; their cells record the per-cell truth without failing
//! the suite, so a false cell is a finding, not a defect.

mod checks;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::poly::PolyError;

/// Hard workload caps by what a check enumerates.
const CAP_PERMS: usize = crate::perm::MAX_AVOIDER_N;
const CAP_PATHS: usize = crate::lattice::MAX_PATH_N;
const CAP_POLY: usize = 40;

/// Bounds accepted by [`run_all`].
const RUN_ALL_SMALL_MAX: usize = 8;
const RUN_ALL_POLY_MAX: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("{check}: n_max {n_max} exceeds the workload cap {max}")]
    BoundExceeded {
        check: String,
        n_max: usize,
        max: usize,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// Every cell agreed and the check is enforced, or agreed throughout.
    Pass,
    /// An enforced cell disagreed.
    Fail,
    /// Only report-only cells disagreed.
    ReportOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    pub n_max: usize,
    pub mu: Option<u32>,
}

/// One compared value pair, addressed by its triangle cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellOutcome {
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: CheckParams,
    pub status: CheckStatus,
    pub cells: Vec<CellOutcome>,
    pub counterexamples: Vec<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    /// All cells agreed.
    pub fn all_ok(&self) -> bool {
        self.cells.iter().all(|c| c.ok)
    }
}

/// Accumulates cells (with their tier) while a check runs.
#[derive(Default)]
struct Outcomes {
    cells: Vec<(CellOutcome, bool)>,
    counterexamples: Vec<String>,
    effective_mu: Option<u32>,
}

impl Outcomes {
    fn push(
        &mut self,
        enforced: bool,
        n: usize,
        k: usize,
        expected: String,
        actual: String,
        ok: bool,
    ) {
        self.cells.push((
            CellOutcome {
                n,
                k,
                expected,
                actual,
                ok,
            },
            enforced,
        ));
    }

    fn enforced(&mut self, n: usize, k: usize, expected: String, actual: String, ok: bool) {
        self.push(true, n, k, expected, actual, ok);
    }

    fn reported(&mut self, n: usize, k: usize, expected: String, actual: String, ok: bool) {
        self.push(false, n, k, expected, actual, ok);
    }

    fn counterexample(&mut self, text: String) {
        self.counterexamples.push(text);
    }

    fn set_mu(&mut self, mu: u32) {
        self.effective_mu = Some(mu);
    }

    fn status(&self) -> CheckStatus {
        if self.cells.iter().any(|(c, enforced)| *enforced && !c.ok) {
            CheckStatus::Fail
        } else if self.cells.iter().all(|(c, _)| c.ok) {
            CheckStatus::Pass
        } else {
            CheckStatus::ReportOnly
        }
    }
}

/// What a check enumerates, deciding which [`run_all`] bound applies and
/// the hard cap on n_max.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Walks permutation or path sets; sized by the small bound.
    Enumeration,
    /// Pure recurrence and polynomial work; sized by the larger bound.
    Polynomial,
}

type Runner = fn(usize, Option<u32>, &mut Outcomes) -> Result<(), CheckError>;

pub struct CheckInfo {
    pub id: &'static str,
    pub scale: Scale,
    pub max_n: usize,
    runner: Runner,
}

/// Every check, in canonical execution order.
pub fn registry() -> &'static [CheckInfo] {
    use checks::*;
    use Scale::*;
    #[rustfmt::skip]
    const REGISTRY: &[CheckInfo] = &[
        CheckInfo { id: "CHK-PERM6",   scale: Enumeration, max_n: CAP_PERMS, runner: chk_perm6 },
        CheckInfo { id: "CHK-QINV",    scale: Enumeration, max_n: CAP_PERMS, runner: chk_qinv },
        CheckInfo { id: "CHK-CLASSIF", scale: Enumeration, max_n: CAP_PERMS, runner: chk_classif },
        CheckInfo { id: "CHK-NEG",     scale: Enumeration, max_n: CAP_PERMS, runner: chk_neg },
        CheckInfo { id: "CHK-INVSTAR", scale: Enumeration, max_n: CAP_PERMS, runner: chk_invstar },
        CheckInfo { id: "CHK-MIRROR",  scale: Polynomial,  max_n: CAP_POLY,  runner: chk_mirror },
        CheckInfo { id: "CHK-COINV",   scale: Enumeration, max_n: CAP_PERMS, runner: chk_coinv },
        CheckInfo { id: "CHK-DYCK",    scale: Enumeration, max_n: CAP_PATHS, runner: chk_dyck },
        CheckInfo { id: "CHK-WORD",    scale: Enumeration, max_n: CAP_PATHS, runner: chk_word },
        CheckInfo { id: "CHK-TREE",    scale: Enumeration, max_n: CAP_PATHS, runner: chk_tree },
        CheckInfo { id: "CHK-AREAEQ",  scale: Enumeration, max_n: CAP_PATHS, runner: chk_areaeq },
        CheckInfo { id: "CHK-UNIV",    scale: Enumeration, max_n: CAP_PERMS, runner: chk_univ },
        CheckInfo { id: "CHK-SPEC",    scale: Polynomial,  max_n: CAP_POLY,  runner: chk_spec },
        CheckInfo { id: "CHK-QP-SPEC", scale: Polynomial,  max_n: CAP_POLY,  runner: chk_qp_spec },
        CheckInfo { id: "CHK-QP-CONJ", scale: Enumeration, max_n: CAP_PERMS, runner: chk_qp_conj },
        CheckInfo { id: "CHK-RAND",    scale: Polynomial,  max_n: CAP_POLY,  runner: chk_rand },
        CheckInfo { id: "CHK-MULTI",   scale: Enumeration, max_n: CAP_PERMS, runner: chk_multi },
        CheckInfo { id: "CHK-CYCLO",   scale: Polynomial,  max_n: CAP_POLY,  runner: chk_cyclo },
        CheckInfo { id: "CHK-CYCLO2",  scale: Polynomial,  max_n: CAP_POLY,  runner: chk_cyclo2 },
    ];
    REGISTRY
}

/// All check ids, in registry order.
pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// Runs one check up to `n_max`. `mu` selects the residue-class count for
/// the multivariate and cyclotomic checks and is ignored elsewhere.
pub fn run_check(check_id: &str, n_max: usize, mu: Option<u32>) -> Result<CheckReport, CheckError> {
    let info = registry()
        .iter()
        .find(|c| c.id == check_id)
        .ok_or_else(|| CheckError::UnknownCheck(check_id.to_string()))?;
    if n_max > info.max_n {
        return Err(CheckError::BoundExceeded {
            check: info.id.to_string(),
            n_max,
            max: info.max_n,
        });
    }
    let started = Instant::now();
    let mut out = Outcomes::default();
    (info.runner)(n_max, mu, &mut out)?;
    let status = out.status();
    Ok(CheckReport {
        check_id: info.id.to_string(),
        params: CheckParams {
            n_max,
            mu: out.effective_mu,
        },
        status,
        cells: out.cells.into_iter().map(|(c, _)| c).collect(),
        counterexamples: out.counterexamples,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Runs the whole registry: enumeration checks at `n_max_small`
/// (at most 8), polynomial checks at `n_max_poly` (at most 40).
pub fn run_all(n_max_small: usize, n_max_poly: usize) -> Result<Vec<CheckReport>, CheckError> {
    if n_max_small > RUN_ALL_SMALL_MAX {
        return Err(CheckError::BoundExceeded {
            check: "run_all".to_string(),
            n_max: n_max_small,
            max: RUN_ALL_SMALL_MAX,
        });
    }
    if n_max_poly > RUN_ALL_POLY_MAX {
        return Err(CheckError::BoundExceeded {
            check: "run_all".to_string(),
            n_max: n_max_poly,
            max: RUN_ALL_POLY_MAX,
        });
    }
    registry()
        .iter()
        .map(|info| {
            let n = match info.scale {
                Scale::Enumeration => n_max_small,
                Scale::Polynomial => n_max_poly,
            };
            run_check(info.id, n, None)
        })
        .collect()
}

/// Suite verdict: false exactly when some enforced check failed.
/// Report-only discrepancies do not affect it.
pub fn suite_ok(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != CheckStatus::Fail)
}
