//! Membership of `(M, p)` in the four exception sets and the per-`(p, d)`
//! count table.
//!
//! With `D = deg(M)`:
//!
//! | set | condition |
//! |-----|-----------|
//! | 1   | `c = D` |
//! | 2   | `c = D + 1`, `c` odd |
//! | 3   | `c + m = D`, `c` even |
//! | 4   | `c + m = D + 1`, `c` even, `m >= 3` |

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::mersenne::{enumerate, MersennePrime};
use crate::sigma_chain::{analyze_cached, FactorCache, SigmaAnalysis};

/// Smallest degree covered by the table.
pub const MIN_TABLE_DEGREE: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `c >= D + 2`
    I,
    /// `c + m < D`
    II,
    /// `c < D < c + m`
    III,
    /// Outside every set and every case above.
    #[serde(rename = "IV-residual")]
    IvResidual,
    /// In an exception set, or `c` / `m` missing.
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IvResidual => "IV-residual",
            CaseTag::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub analysis: SigmaAnalysis,
    /// Membership in sets 1..=4.
    pub in_sigma: [bool; 4],
    pub case_tag: CaseTag,
}

impl ClassRecord {
    pub fn in_any(&self) -> bool {
        self.in_sigma.iter().any(|&b| b)
    }

    /// Which set `M` falls into, 1-based.
    pub fn set_index(&self) -> Option<usize> {
        self.in_sigma.iter().position(|&b| b).map(|i| i + 1)
    }

    pub fn to_json(&self) -> ClassJson {
        let s = &self.analysis;
        ClassJson {
            a: s.mersenne.a(),
            b: s.mersenne.b(),
            p: s.p,
            deg: s.mersenne.degree(),
            c: s.c,
            m: s.m,
            in_sigma1: self.in_sigma[0],
            in_sigma2: self.in_sigma[1],
            in_sigma3: self.in_sigma[2],
            in_sigma4: self.in_sigma[3],
            in_sigma: self.in_any(),
            case_tag: self.case_tag,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    pub deg: u32,
    pub c: Option<usize>,
    pub m: Option<usize>,
    pub in_sigma1: bool,
    pub in_sigma2: bool,
    pub in_sigma3: bool,
    pub in_sigma4: bool,
    pub in_sigma: bool,
    pub case_tag: CaseTag,
}

/// Set memberships from `(D, c, m)`; conditions needing an absent `c` or
/// `m` are false.
pub fn memberships(deg: usize, c: Option<usize>, m: Option<usize>) -> [bool; 4] {
    let Some(c) = c else {
        return [false; 4];
    };
    let even = c % 2 == 0;
    let s1 = c == deg;
    let s2 = c == deg + 1 && !even;
    let (s3, s4) = match m {
        Some(m) => (c + m == deg && even, c + m == deg + 1 && even && m >= 3),
        None => (false, false),
    };
    [s1, s2, s3, s4]
}

pub fn case_tag(deg: usize, c: Option<usize>, m: Option<usize>) -> CaseTag {
    if memberships(deg, c, m).iter().any(|&b| b) {
        return CaseTag::NotApplicable;
    }
    let Some(c) = c else {
        return CaseTag::NotApplicable;
    };
    if c >= deg + 2 {
        return CaseTag::I;
    }
    let Some(m) = m else {
        return CaseTag::NotApplicable;
    };
    if c + m < deg {
        CaseTag::II
    } else if c < deg && deg < c + m {
        CaseTag::III
    } else {
        CaseTag::IvResidual
    }
}

pub fn classify(analysis: SigmaAnalysis) -> ClassRecord {
    let deg = analysis.deg_m();
    let in_sigma = memberships(deg, analysis.c, analysis.m);
    let case_tag = case_tag(deg, analysis.c, analysis.m);
    ClassRecord {
        analysis,
        in_sigma,
        case_tag,
    }
}

/// Analyzes and classifies every `M` in `ms` at `p`, in input order.
pub fn classify_all(
    ms: &[MersennePrime],
    p: u32,
    seed: u64,
    cache: Option<&FactorCache>,
) -> Result<Vec<ClassRecord>> {
    ms.par_iter()
        .map(|m| analyze_cached(m, p, seed, cache).map(classify))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u32,
    pub d: u32,
    pub lambda: [usize; 4],
    pub m_count: usize,
}

impl TableRow {
    pub fn from_records(p: u32, d: u32, records: &[ClassRecord]) -> Self {
        let mut lambda = [0; 4];
        let mut m_count = 0;
        for r in records {
            let deg = r.analysis.mersenne.degree();
            if (MIN_TABLE_DEGREE..=d).contains(&deg) {
                m_count += 1;
                for (count, &hit) in lambda.iter_mut().zip(&r.in_sigma) {
                    *count += hit as usize;
                }
            }
        }
        Self {
            p,
            d,
            lambda,
            m_count,
        }
    }

    pub fn csv(&self) -> String {
        let [l1, l2, l3, l4] = self.lambda;
        format!("{},{},{l1},{l2},{l3},{l4},{}", self.p, self.d, self.m_count)
    }

    pub fn markdown(&self) -> String {
        let [l1, l2, l3, l4] = self.lambda;
        format!("| {} | {} | {l1} | {l2} | {l3} | {l4} | {} |", self.p, self.d, self.m_count)
    }
}

pub const TABLE_CSV_HEADER: &str = "p,d,lambda1,lambda2,lambda3,lambda4,m_count";
pub const TABLE_MARKDOWN_HEADER: &str =
    "| p | d | #Λ¹ | #Λ² | #Λ³ | #Λ⁴ | #ℳ_d |\n|---|---|---|---|---|---|---|";

/// One row per `p`, counting over all Mersenne primes with `5 <= deg <= d`.
pub fn table(
    primes: &[u32],
    d: u32,
    seed: u64,
    cache: Option<&FactorCache>,
) -> Result<Vec<TableRow>> {
    let ms = enumerate(MIN_TABLE_DEGREE, d.max(MIN_TABLE_DEGREE))?;
    primes
        .iter()
        .map(|&p| Ok(TableRow::from_records(p, d, &classify_all(&ms, p, seed, cache)?)))
        .collect()
}

/// `(a, b)` of every record whose set membership differs from that of its
/// conjugate `(b, a)` in the same batch. `c` is invariant under `x -> x+1`
/// but `m` is not, so agreement is an observation rather than an identity.
pub fn conjugation_mismatches(records: &[ClassRecord]) -> Vec<(u32, u32)> {
    let by_exps: std::collections::HashMap<(u32, u32), [bool; 4]> = records
        .iter()
        .map(|r| ((r.analysis.mersenne.a(), r.analysis.mersenne.b()), r.in_sigma))
        .collect();
    let mut out: Vec<(u32, u32)> = by_exps
        .iter()
        .filter(|((a, b), flags)| by_exps.get(&(*b, *a)).is_some_and(|f| f != *flags))
        .map(|(k, _)| *k)
        .collect();
    out.sort_unstable();
    out
}

pub fn render_markdown(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_MARKDOWN_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&r.markdown());
    }
    out
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&r.csv());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_definitions() {
        assert_eq!(memberships(7, Some(7), Some(1)), [true, false, false, false]);
        assert_eq!(memberships(7, Some(8), Some(1)), [false; 4]);
        assert_eq!(memberships(8, Some(9), Some(1)), [false, true, false, false]);
        assert_eq!(memberships(9, Some(4), Some(5)), [false, false, true, false]);
        assert_eq!(memberships(9, Some(3), Some(6)), [false; 4]);
        assert_eq!(memberships(9, Some(4), Some(7)), [false; 4]);
        assert_eq!(memberships(10, Some(4), Some(7)), [false, false, false, true]);
        assert_eq!(memberships(10, None, None), [false; 4]);
        assert_eq!(memberships(10, Some(6), None), [false; 4]);
    }

    #[test]
    fn case_tags() {
        assert_eq!(case_tag(7, Some(7), Some(1)), CaseTag::NotApplicable);
        assert_eq!(case_tag(7, None, None), CaseTag::NotApplicable);
        assert_eq!(case_tag(7, Some(9), None), CaseTag::I);
        // c = D + 1 with c even: no set, no case
        assert_eq!(case_tag(7, Some(8), Some(1)), CaseTag::IvResidual);
        assert_eq!(case_tag(9, Some(2), Some(3)), CaseTag::II);
        assert_eq!(case_tag(9, Some(4), Some(7)), CaseTag::III);
        // c + m = D with c odd
        assert_eq!(case_tag(9, Some(3), Some(6)), CaseTag::IvResidual);
        assert_eq!(case_tag(9, Some(4), None), CaseTag::NotApplicable);
    }

    #[test]
    fn flags_are_exclusive_on_a_grid() {
        for deg in 5..40 {
            for c in 1..50 {
                for m in (1..50).step_by(2) {
                    let f = memberships(deg, Some(c), Some(m));
                    assert!(f.iter().filter(|&&b| b).count() <= 1, "{deg} {c} {m}");
                }
            }
        }
    }

    #[test]
    fn table_rendering() {
        let row = TableRow {
            p: 5,
            d: 100,
            lambda: [4, 0, 0, 0],
            m_count: 226,
        };
        assert_eq!(row.csv(), "5,100,4,0,0,0,226");
        assert_eq!(row.markdown(), "| 5 | 100 | 4 | 0 | 0 | 0 | 226 |");
    }
}
