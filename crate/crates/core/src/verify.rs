//! Machine checks over analyzed instances: the non-Mersenne-factor theorem
//! for `M` outside the exception sets, and the coefficient/degree lemmas
//! that its proof is built from.
//!
//! Lemma checks come in two scopes. Unconditional checks are arithmetic
//! facts that must hold on every instance. Conditional checks only follow
//! when every factor of `sigma(M^(2h))` is a Mersenne prime; they are
//! reported as vacuous when that antecedent fails, which is the expected
//! outcome on real data.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::classify::{classify, CaseTag, ClassRecord};
use crate::error::{Error, Result};
use crate::factorize::{is_irreducible, squarefree_by_derivative};
use crate::gf2poly::Gf2Poly;
use crate::mersenne::{enumerate, is_mersenne_prime, recognize};
use crate::sigma_chain::{analyze_cached, FactorCache, SigmaAnalysis};

pub mod algebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    /// `M` lies in one of the exception sets.
    Excluded,
    /// A non-Mersenne irreducible factor was found and re-verified.
    Holds,
    /// No non-Mersenne factor: would contradict the theorem.
    #[serde(rename = "VIOLATED")]
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    pub status: VerdictStatus,
    pub witness: Option<Gf2Poly>,
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    pub status: VerdictStatus,
    pub witness: Option<String>,
}

impl TheoremVerdict {
    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            a: self.a,
            b: self.b,
            p: self.p,
            status: self.status,
            witness: self.witness.as_ref().map(Gf2Poly::to_hex),
        }
    }
}

/// Independent re-check of a witness: divides `target`, irreducible, and not
/// of Mersenne shape.
pub fn witness_is_valid(witness: &Gf2Poly, target: &Gf2Poly) -> Result<bool> {
    Ok(witness.degree().is_some_and(|d| d > 0)
        && witness.divides(target)?
        && is_irreducible(witness)?
        && recognize(witness)?.is_none())
}

pub fn check_theorem(analysis: &SigmaAnalysis, record: &ClassRecord) -> Result<TheoremVerdict> {
    let mut verdict = TheoremVerdict {
        a: analysis.mersenne.a(),
        b: analysis.mersenne.b(),
        p: analysis.p,
        status: VerdictStatus::Violated,
        witness: None,
    };
    if record.in_any() {
        verdict.status = VerdictStatus::Excluded;
        return Ok(verdict);
    }
    for (f, _) in analysis.factorization.factors() {
        if recognize(f)?.is_none() && witness_is_valid(f, &analysis.sigma_even)? {
            verdict.status = VerdictStatus::Holds;
            verdict.witness = Some(f.clone());
            break;
        }
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Unconditional,
    Conditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaEntry {
    pub name: &'static str,
    pub scope: Scope,
    pub outcome: Outcome,
    /// Instances on which the hypotheses held and the check ran.
    pub instances: usize,
    /// Instances on which the hypotheses failed.
    pub vacuous: usize,
    pub counterexamples: Vec<serde_json::Value>,
}

/// Per-lemma outcomes, merged across instances by name.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub entries: Vec<LemmaEntry>,
}

impl LemmaReport {
    fn record(&mut self, name: &'static str, scope: Scope, applies: bool, holds: bool, s: &SigmaAnalysis) {
        self.record_with(name, scope, applies, holds, || counterexample(s));
    }

    /// Like `record`, with the counterexample built lazily by `ce`.
    pub(crate) fn record_with(
        &mut self,
        name: &'static str,
        scope: Scope,
        applies: bool,
        holds: bool,
        ce: impl FnOnce() -> serde_json::Value,
    ) {
        let outcome = match (applies, holds) {
            (false, _) => Outcome::Vacuous,
            (true, true) => Outcome::Pass,
            (true, false) => Outcome::Fail,
        };
        let counterexamples = if outcome == Outcome::Fail { vec![ce()] } else { Vec::new() };
        self.merge_entry(LemmaEntry {
            name,
            scope,
            outcome,
            instances: applies as usize,
            vacuous: !applies as usize,
            counterexamples,
        });
    }

    fn merge_entry(&mut self, e: LemmaEntry) {
        match self.entries.iter_mut().find(|x| x.name == e.name) {
            None => self.entries.push(e),
            Some(x) => {
                x.outcome = match (x.outcome, e.outcome) {
                    (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
                    (Outcome::Pass, _) | (_, Outcome::Pass) => Outcome::Pass,
                    _ => Outcome::Vacuous,
                };
                x.instances += e.instances;
                x.vacuous += e.vacuous;
                x.counterexamples.extend(e.counterexamples);
            }
        }
    }

    pub fn merge(&mut self, other: LemmaReport) {
        for e in other.entries {
            self.merge_entry(e);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn get(&self, name: &str) -> Option<&LemmaEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn counterexample(s: &SigmaAnalysis) -> serde_json::Value {
    json!({
        "a": s.mersenne.a(),
        "b": s.mersenne.b(),
        "p": s.p,
        "c": s.c,
        "m": s.m,
        "e": s.e,
        "sigma_even": s.sigma_even.to_hex(),
        "w": s.w.to_hex(),
    })
}

/// `alpha_l` for a polynomial known to be nonzero.
fn alpha(s: &Gf2Poly, l: usize) -> bool {
    s.top_coeff(l).expect("nonzero polynomial")
}

fn structural(s: &SigmaAnalysis) -> Result<LemmaReport> {
    use Scope::*;
    let mut rep = LemmaReport::default();
    let deg = s.deg_m();
    let h = s.h as u64;
    let mp = s.mersenne.poly();
    let b_odd = s.mersenne.b() % 2 == 1;
    let even_power = mp.pow(2 * h);
    let odd_power = mp.pow(2 * h - 1);
    let top_pair = &even_power + &odd_power;

    let mut direct = Gf2Poly::zero();
    let mut term = Gf2Poly::one();
    for _ in 0..=2 * h {
        direct += &term;
        term = &term * mp;
    }
    let degree_ok = s.sigma_even.degree() == Some(2 * h as usize * deg);
    rep.record("sigma_even_is_geometric_sum", Unconditional, true, direct == s.sigma_even && degree_ok, s);

    let sqf = s.factorization.is_squarefree();
    let sqf_gcd = squarefree_by_derivative(&s.sigma_even)?;
    let not_mersenne = !is_mersenne_prime(&s.sigma_even)?;
    rep.record("sigma_even_squarefree_not_mersenne", Unconditional, true, sqf && sqf_gcd && not_mersenne, s);

    let low = (1..deg).all(|l| alpha(&s.sigma_even, l) == alpha(&even_power, l));
    let high = (deg..2 * deg).all(|l| alpha(&s.sigma_even, l) == alpha(&top_pair, l));
    rep.record("sigma_even_top_coeffs", Unconditional, true, low && high, s);

    let odd_zero = (1..=even_power.deg()).step_by(2).all(|l| !alpha(&even_power, l));
    rep.record("even_power_odd_coeffs_vanish", Unconditional, true, odd_zero, s);
    rep.record("odd_power_alpha1_when_b_odd", Unconditional, b_odd, alpha(&odd_power, 1), s);

    let deg_odd = deg % 2 == 1;
    rep.record("top_pair_alpha_deg_when_deg_odd", Unconditional, deg_odd, alpha(&top_pair, deg), s);
    rep.record("top_pair_alpha_deg1_when_deg_even", Unconditional, !deg_odd, alpha(&top_pair, deg + 1), s);
    rep.record("sigma_odd_alpha1_when_deg_even", Unconditional, !deg_odd, alpha(&s.sigma_odd, 1), s);

    let same_degree = s.double_sigma.degree() == s.sigma_even.degree();
    let c_positive = s.c.is_none_or(|c| c >= 1);
    rep.record("double_sigma_degree_and_c_positive", Unconditional, true, same_degree && c_positive, s);

    if let Some(c) = s.c {
        let mut shifted = s.sigma_even.clone();
        shifted.flip(0);
        let least = (0..).find(|&l| alpha(&s.double_sigma, l) != alpha(&shifted, l));
        rep.record("c_is_least_disagreement", Unconditional, true, least == Some(c), s);
    } else {
        rep.record("c_is_least_disagreement", Unconditional, false, true, s);
    }

    // sigma(S) = S + T with deg T <= deg S - r - 1 when every factor has degree > r.
    let min_factor = s.factorization.factors().iter().map(|(f, _)| f.deg()).min();
    let r = min_factor.map_or(0, |d| d - 1);
    let agree = (0..=r).all(|l| alpha(&s.double_sigma, l) == alpha(&s.sigma_even, l));
    rep.record("sigma_keeps_top_coeffs_without_small_factors", Unconditional, true, agree, s);

    let mut r_alt = &s.double_sigma + &even_power;
    r_alt.flip(0);
    rep.record("r_equals_u_plus_1_plus_even_power", Unconditional, true, r_alt == s.r, s);

    // Everything below follows only when every factor is a Mersenne prime.
    let am = s.all_mersenne;
    let (u, v) = (s.u.unwrap_or(0), s.v.unwrap_or(0));
    rep.record("exponent_sums_even", Conditional, am, u % 2 == 0 && v % 2 == 0, s);
    let splits = s.double_sigma == crate::mersenne::split_part(u as u32, v as u32);
    rep.record("double_sigma_splits_as_square", Conditional, am, splits && s.double_sigma.is_square(), s);
    rep.record("w_nonzero_not_square", Conditional, am, !s.w.is_zero() && !s.w.is_square(), s);
    rep.record("r_is_square", Conditional, am, s.r.is_square(), s);
    let odd_plus_w = &odd_power + &s.w;
    rep.record("odd_power_plus_w_not_square", Conditional, am && h >= 2, !odd_plus_w.is_square(), s);
    rep.record("mersenne_has_exponent_at_least_2", Conditional, am, s.mersenne.a() >= 2 || s.mersenne.b() >= 2, s);
    let index_exists = match s.w.degree() {
        None => false,
        Some(d) if d % 2 == 0 => s.m.is_some(),
        Some(_) => s.e.is_some(),
    };
    rep.record("least_odd_or_even_index_exists", Conditional, am, index_exists, s);

    let c_vs_deg = match s.c {
        None => false,
        Some(c) if c < deg => c % 2 == 0,
        Some(c) if c > deg => deg % 2 == 0,
        Some(_) => true,
    };
    rep.record("c_parity_against_degree", Conditional, am, c_vs_deg, s);
    let boundary = match (s.c, s.m) {
        (Some(c), m) => {
            let ok1 = c != deg + 1 || c % 2 == 1;
            let ok2 = m.is_none_or(|m| c + m != deg || c % 2 == 0);
            let ok3 = m.is_none_or(|m| c + m != deg + 1 || m < 3 || c % 2 == 0);
            ok1 && ok2 && ok3
        }
        (None, _) => false,
    };
    rep.record("c_parity_at_set_boundaries", Conditional, am, boundary, s);
    Ok(rep)
}

/// Runs every structural check on one instance.
pub fn check_structural_lemmas(analysis: &SigmaAnalysis) -> Result<LemmaReport> {
    structural(analysis)
}

/// The degree-bookkeeping facts behind each case of the proof, checked
/// exactly when their hypotheses on `c`, `m` and `D = deg(M)` hold. Cases II
/// and III additionally stand on `c` being even.
pub fn check_case_lemmas(analysis: &SigmaAnalysis, _record: &ClassRecord) -> LemmaReport {
    use Scope::Unconditional;
    let s = analysis;
    let mut rep = LemmaReport::default();
    let deg = s.deg_m();
    let deg_odd = deg % 2 == 1;
    let (c, m) = (s.c, s.m);

    let case1 = c.is_some_and(|c| c >= deg + 2);
    let idx = if deg_odd { deg } else { deg + 1 };
    rep.record("case_i_alpha_of_u", Unconditional, case1, case1 && alpha(&s.double_sigma, idx), s);

    let c_even = c.is_some_and(|c| c % 2 == 0);
    let case2 = c_even && matches!((c, m), (Some(c), Some(m)) if c + m < deg);
    let holds2 = case2 && {
        let k = c.unwrap() + m.unwrap();
        k % 2 == 1 && alpha(&s.double_sigma, k)
    };
    rep.record("case_ii_alpha_of_u", Unconditional, case2, holds2, s);

    let case3_odd = c_even && deg_odd && matches!((c, m), (Some(c), Some(m)) if c < deg && c + m > deg);
    let holds3_odd = case3_odd && alpha(&s.r, deg - c.unwrap());
    rep.record("case_iii_alpha_of_r_deg_odd", Unconditional, case3_odd, holds3_odd, s);

    let case3_even =
        c_even && !deg_odd && matches!((c, m), (Some(c), Some(m)) if c < deg && c + m > deg + 1);
    let holds3_even = case3_even && alpha(&s.r, deg - c.unwrap() + 1);
    rep.record("case_iii_alpha_of_r_deg_even", Unconditional, case3_even, holds3_even, s);
    rep
}

/// Everything computed for one `(M, p)` in a campaign.
#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub record: ClassRecord,
    pub verdict: TheoremVerdict,
    pub lemmas: LemmaReport,
}

pub fn check_instance(analysis: SigmaAnalysis) -> Result<InstanceOutcome> {
    let mut lemmas = check_structural_lemmas(&analysis)?;
    let record = classify(analysis);
    lemmas.merge(check_case_lemmas(&record.analysis, &record));
    let verdict = check_theorem(&record.analysis, &record)?;
    Ok(InstanceOutcome {
        record,
        verdict,
        lemmas,
    })
}

#[derive(Debug, Default)]
pub struct Campaign {
    pub outcomes: Vec<InstanceOutcome>,
    pub report: LemmaReport,
    /// `(a, b, p, error)` for instances that could not be computed.
    pub errors: Vec<(u32, u32, u32, String)>,
}

impl Campaign {
    pub fn verdicts(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.outcomes.iter().map(|o| &o.verdict)
    }

    pub fn violations(&self) -> usize {
        self.verdicts().filter(|v| v.status == VerdictStatus::Violated).count()
    }

    pub fn count(&self, status: VerdictStatus) -> usize {
        self.verdicts().filter(|v| v.status == status).count()
    }

    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn succeeded(&self) -> bool {
        self.is_complete() && self.violations() == 0 && !self.report.has_failures()
    }

    /// Case tags of the instances outside every exception set.
    pub fn case_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for o in &self.outcomes {
            if !o.record.in_any() {
                *out.entry(o.record.case_tag.to_string()).or_default() += 1;
            }
        }
        out
    }

    pub fn iv_residuals(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.record.case_tag == CaseTag::IvResidual)
            .count()
    }

    /// Instances where the antecedent of the conditional checks held.
    pub fn all_mersenne_instances(&self) -> usize {
        self.outcomes.iter().filter(|o| o.record.analysis.all_mersenne).count()
    }

    /// JSON-lines verdict stream, in canonical `(p, deg, a)` order.
    pub fn verdict_lines(&self) -> Result<String> {
        let mut out = String::new();
        for v in self.verdicts() {
            out.push_str(&serde_json::to_string(&v.to_json())?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "instances: {}  excluded: {}  holds: {}  VIOLATED: {}  errors: {}\n",
            self.outcomes.len(),
            self.count(VerdictStatus::Excluded),
            self.count(VerdictStatus::Holds),
            self.violations(),
            self.errors.len()
        );
        let cases: Vec<String> = self
            .case_counts()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        s.push_str(&format!("case tags: {}\n", cases.join(" ")));
        s.push_str(&format!(
            "all-Mersenne antecedent satisfied: {}\n",
            self.all_mersenne_instances()
        ));
        for e in &self.report.entries {
            s.push_str(&format!(
                "{:<46} {:<13} {:<7} checked={} vacuous={}\n",
                e.name,
                format!("{:?}", e.scope).to_lowercase(),
                format!("{:?}", e.outcome).to_lowercase(),
                e.instances,
                e.vacuous
            ));
        }
        if !self.is_complete() {
            s.push_str("INCOMPLETE: some instances failed to compute\n");
        }
        s
    }
}

/// Exhaustive run over every Mersenne prime with `5 <= deg <= d` and every
/// `p` in `primes`. Per-instance failures are collected, not fatal.
pub fn run_campaign(
    primes: &[u32],
    d: u32,
    seed: u64,
    cache: Option<&FactorCache>,
) -> Result<Campaign> {
    if primes.is_empty() {
        return Ok(Campaign::default());
    }
    if let Some(&bad) = primes.iter().find(|&&p| p < 5 || !crate::sigma_chain::is_odd_prime(p as u64)) {
        return Err(Error::InvalidPrime(bad as u64));
    }
    let ms = enumerate(5, d.max(5))?;
    let ms: Vec<_> = ms.into_iter().filter(|m| m.degree() <= d).collect();
    let jobs: Vec<(u32, usize)> = primes
        .iter()
        .flat_map(|&p| (0..ms.len()).map(move |i| (p, i)))
        .collect();
    let results: Vec<(u32, usize, Result<InstanceOutcome>)> = jobs
        .into_par_iter()
        .map(|(p, i)| {
            let out = analyze_cached(&ms[i], p, seed, cache).and_then(check_instance);
            (p, i, out)
        })
        .collect();

    let mut campaign = Campaign::default();
    for (p, i, res) in results {
        match res {
            Ok(o) => {
                campaign.report.merge(o.lemmas.clone());
                campaign.outcomes.push(o);
            }
            Err(e) => campaign.errors.push((ms[i].a(), ms[i].b(), p, e.to_string())),
        }
    }
    Ok(campaign)
}
