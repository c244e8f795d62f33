//! Oracle-versus-formula checks behind `smallcover verify`.

use std::collections::BTreeSet;

use serde::Serialize;
use smallcover::correspondence::{
    count_mn_bruteforce, count_orientable_mn_bruteforce, mn_members, phi, MATRIX_ORACLE_MAX,
};
use smallcover::counting::CountTable;
use smallcover::digraph::enumerate_digraphs;
use smallcover::series::{derivative_identity_holds, verify_identities, IdentityCheck};
use smallcover::{BitMatrix, Digraph, EnumerationCap};

use crate::parallel::tally_parallel;

/// Highest `n` for the termwise `F' = F(x/2)` check.
pub const DERIVATIVE_CHECK_MAX: usize = 40;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub series_order: usize,
    /// Only the series identities.
    pub series_only: bool,
    pub jobs: usize,
    pub cap: EnumerationCap,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 4,
            series_order: 12,
            series_only: false,
            jobs: 1,
            cap: EnumerationCap::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SeriesCheck {
    pub identity: &'static str,
    pub order: usize,
    pub pass: bool,
    pub first_failure: Option<usize>,
}

impl From<IdentityCheck> for SeriesCheck {
    fn from(c: IdentityCheck) -> Self {
        SeriesCheck {
            identity: c.identity,
            order: c.order,
            pass: c.pass,
            first_failure: c.first_failure,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<Check>,
    pub series: Vec<SeriesCheck>,
    /// The first failing check, in run order.
    pub first_failure: Option<Check>,
}

impl VerifyReport {
    fn new(checks: Vec<Check>, series: Vec<SeriesCheck>) -> Self {
        let series_failure = series.iter().find(|s| !s.pass).map(|s| Check {
            check: s.identity.to_string(),
            pass: false,
            detail: format!(
                "order {}: first differing coefficient at index {}",
                s.order,
                s.first_failure.map_or("?".into(), |i| i.to_string())
            ),
        });
        let first_failure = checks.iter().find(|c| !c.pass).cloned().or(series_failure);
        VerifyReport {
            pass: first_failure.is_none(),
            checks,
            series,
            first_failure,
        }
    }
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        check: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn equal_counts(name: String, brute: impl ToString, formula: impl ToString) -> Check {
    let (b, f) = (brute.to_string(), formula.to_string());
    let pass = b == f;
    check(name, pass, format!("brute force {b}, formula {f}"))
}

fn figure1_check() -> Check {
    let graph = Digraph::from_edges(4, &[(1, 0), (1, 2), (1, 3), (0, 3), (3, 2)])
        .expect("fixed figure graph");
    let matrix = BitMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 1], [1, 1, 0, 1]])
        .expect("fixed figure matrix");
    let image = phi(&graph);
    check(
        "figure1_phi",
        image == matrix,
        format!(
            "phi(G) = {}",
            image.to_string().trim_end().replace('\n', "/")
        ),
    )
}

/// `φ` is injective on acyclic digraphs and its image is `M(n)`.
fn bijection_check(n: usize, cap: EnumerationCap) -> smallcover::Result<Check> {
    let mut image = BTreeSet::new();
    for g in enumerate_digraphs(n, cap)?.filter(Digraph::is_acyclic) {
        let m = phi(&g);
        if !image.insert(m.row_masks().to_vec()) {
            return Ok(check(
                format!("bijection_onto_mn n={n}"),
                false,
                format!("phi not injective: second preimage {g:?}"),
            ));
        }
    }
    let members: BTreeSet<Vec<u32>> = mn_members(n)?
        .iter()
        .map(|m| m.row_masks().to_vec())
        .collect();
    let name = format!("bijection_onto_mn n={n}");
    Ok(match image.symmetric_difference(&members).next() {
        None => check(name, true, format!("{} matrices", members.len())),
        Some(rows) => {
            let side = if members.contains(rows) {
                "in M(n) but not an image"
            } else {
                "an image but not in M(n)"
            };
            check(name, false, format!("row masks {rows:?} are {side}"))
        }
    })
}

/// Even out-degrees of `G` iff odd column sums of `φ(G)`, over every digraph.
fn orientability_check(n: usize, cap: EnumerationCap) -> smallcover::Result<Check> {
    let name = format!("orientability_equivalence n={n}");
    let mut total = 0u64;
    for (code, g) in enumerate_digraphs(n, cap)?.with_codes() {
        total += 1;
        if g.all_out_degrees_even() != phi(&g).is_orientable_characteristic() {
            return Ok(check(
                name,
                false,
                format!("counterexample code {code}: {g:?}"),
            ));
        }
    }
    Ok(check(name, true, format!("{total} digraphs")))
}

/// Runs every check. `table` supplies the formula side.
pub fn run_verify(
    config: &VerifyConfig,
    table: &mut CountTable,
) -> smallcover::Result<VerifyReport> {
    let mut checks = Vec::new();
    if !config.series_only {
        config.cap.check(config.n_max)?;
        checks.push(figure1_check());
        for n in 0..=config.n_max {
            let tally = tally_parallel(n, config.jobs, config.cap)?;
            checks.push(equal_counts(
                format!("acyclic_count n={n}"),
                tally.acyclic,
                table.robinson_r(n),
            ));
            checks.push(equal_counts(
                format!("orientable_count n={n}"),
                tally.orientable,
                table.orientable_o(n),
            ));
        }
        for n in 0..=config.n_max.min(MATRIX_ORACLE_MAX) {
            checks.push(bijection_check(n, config.cap)?);
            checks.push(equal_counts(
                format!("mn_count n={n}"),
                count_mn_bruteforce(n)?,
                table.robinson_r(n),
            ));
            checks.push(equal_counts(
                format!("orientable_mn_count n={n}"),
                count_orientable_mn_bruteforce(n)?,
                table.orientable_o(n),
            ));
            checks.push(orientability_check(n, config.cap)?);
        }
        let bad = (0..=DERIVATIVE_CHECK_MAX).find(|&n| !derivative_identity_holds(n));
        checks.push(check(
            "derivative_identity",
            bad.is_none(),
            match bad {
                None => format!("F'(x) = F(x/2) termwise for n <= {DERIVATIVE_CHECK_MAX}"),
                Some(n) => format!("fails at n = {n}"),
            },
        ));
    }
    let series = verify_identities(config.series_order, table)
        .into_iter()
        .map(SeriesCheck::from)
        .collect();
    Ok(VerifyReport::new(checks, series))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let report = run_verify(&VerifyConfig::default(), &mut CountTable::new()).unwrap();
        assert!(report.pass, "{:?}", report.first_failure);
        assert_eq!(report.series.len(), 3);
        assert!(report
            .checks
            .iter()
            .any(|c| c.check == "bijection_onto_mn n=4"));
    }

    #[test]
    fn corrupted_memo_is_named() {
        let seed = vec![1u32.into(), 1u32.into(), 3u32.into(), 24u32.into()];
        let mut table = CountTable::with_seed(seed).unwrap();
        let config = VerifyConfig {
            n_max: 3,
            ..VerifyConfig::default()
        };
        let report = run_verify(&config, &mut table).unwrap();
        assert!(!report.pass);
        let first = report.first_failure.unwrap();
        assert_eq!(first.check, "acyclic_count n=3");
        assert_eq!(first.detail, "brute force 25, formula 24");
        assert!(!report.series[0].pass);
    }

    #[test]
    fn series_only_skips_oracles() {
        let config = VerifyConfig {
            series_only: true,
            n_max: 7,
            ..VerifyConfig::default()
        };
        let report = run_verify(&config, &mut CountTable::new()).unwrap();
        assert!(report.checks.is_empty());
        assert!(report.pass);
    }

    #[test]
    fn cap_is_enforced() {
        let config = VerifyConfig {
            n_max: 7,
            ..VerifyConfig::default()
        };
        assert!(run_verify(&config, &mut CountTable::new()).is_err());
    }
}
