//! Unambiguous discrimination of evolved candidates.
//!
//! Two classifiers live here. [`build_classifier`] is the ground truth: it
//! evolves every candidate and declares a detection pattern `Unique` exactly
//! when one candidate has a nonzero amplitude on it. [`parity_classify`] is
//! the closed-form decision rule for the arm scheme `S_N`, driven by photon
//! parities in odd modes and in the block sets `A^(p,M)`;
//! [`classifier_equivalence`] checks the two against each other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{rational_string, Rational};
use crate::fock::{Occupation, SparseState};
use crate::interferometer::{build_s, evolve, Interferometer};
use crate::labels::{ArmLabel, Label};
use crate::states::ancilla_upsilon;

/// Photons in odd-labelled modes.
pub fn n_odd(pattern: &Occupation) -> usize {
    pattern.n_odd()
}

/// `n_odd − n_even`.
pub fn n_diff(pattern: &Occupation) -> i64 {
    pattern.n_odd() as i64 - pattern.n_even() as i64
}

/// The detector set `A^(p,M)`: the union of the even-indexed blocks
/// `A_m^(p,M) = {m·2^p + 1, …, (m+1)·2^p}` among the `2^M` output ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    p: usize,
    m: usize,
    members: Vec<usize>,
}

impl BlockSet {
    pub fn new(p: usize, m: usize) -> Result<Self> {
        if m == 0 || p >= m {
            return Err(Error::InvalidParameter { name: "p", reason: format!("need 0 <= p < M, got p={p}, M={m}") });
        }
        if m > 16 {
            return Err(Error::ResourceLimit { what: "block-set exponent", requested: m, limit: 16 });
        }
        let block = 1usize << p;
        let blocks = 1usize << (m - p);
        let members =
            (0..blocks).step_by(2).flat_map(|b| (b * block + 1)..=((b + 1) * block)).collect();
        Ok(Self { p, m, members })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of ports, `2^M`.
    pub fn port_count(&self) -> usize {
        1 << self.m
    }

    /// 1-based member ports in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, port: usize) -> bool {
        self.members.binary_search(&port).is_ok()
    }
}

/// `n^(p,M)`: photons detected in `A^(p,M)`.
pub fn n_block(block: &BlockSet, pattern: &Occupation) -> Result<usize> {
    if pattern.modes() != block.port_count() {
        return Err(Error::ModeCountMismatch { expected: block.port_count(), found: pattern.modes() });
    }
    Ok(pattern.count_in(block.members()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Unique(Label),
    Ambiguous(BTreeSet<Label>),
    Impossible,
}

impl Verdict {
    pub fn unique(&self) -> Option<Label> {
        match self {
            Verdict::Unique(l) => Some(*l),
            _ => None,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Verdict::Unique(_) => "unique",
            Verdict::Ambiguous(_) => "ambiguous",
            Verdict::Impossible => "impossible",
        }
    }

    fn labels(&self) -> Vec<Label> {
        match self {
            Verdict::Unique(l) => vec![*l],
            Verdict::Ambiguous(ls) => ls.iter().copied().collect(),
            Verdict::Impossible => vec![],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.labels().iter().map(|l| l.name()).collect();
        match self {
            Verdict::Impossible => f.write_str("impossible"),
            _ => write!(f, "{}({})", self.kind(), names.join(",")),
        }
    }
}

/// Pattern → verdict table for a set of evolved candidates.
#[derive(Clone, Debug)]
pub struct Classifier {
    labels: Vec<Label>,
    evolved: Vec<SparseState>,
    table: BTreeMap<Occupation, Verdict>,
}

/// One exported classifier row.
#[derive(Serialize)]
pub struct ClassifierRecord {
    pub pattern: Occupation,
    pub verdict: String,
    pub labels: Vec<Label>,
    pub probabilities: BTreeMap<Label, String>,
}

/// Evolves each candidate through `u` and tabulates which candidates reach
/// each pattern (exact zero test).
pub fn build_classifier(candidates: &[(Label, SparseState)], u: &Interferometer) -> Result<Classifier> {
    let evolved = candidates
        .par_iter()
        .map(|(label, state)| evolve(state, u).map(|s| (*label, s)))
        .collect::<Result<Vec<_>>>()?;
    Classifier::from_evolved(evolved)
}

impl Classifier {
    /// Builds the table from already-evolved candidates.
    pub fn from_evolved(evolved: Vec<(Label, SparseState)>) -> Result<Self> {
        let mut reach: BTreeMap<Occupation, BTreeSet<Label>> = BTreeMap::new();
        for (label, state) in &evolved {
            // probabilities must be rational for every candidate
            state.total_probability()?;
            for occ in state.terms().keys() {
                reach.entry(occ.clone()).or_default().insert(*label);
            }
        }
        let table = reach
            .into_iter()
            .map(|(occ, ls)| {
                let v = if ls.len() == 1 { Verdict::Unique(*ls.first().unwrap()) } else { Verdict::Ambiguous(ls) };
                (occ, v)
            })
            .collect();
        let (labels, evolved) = evolved.into_iter().unzip();
        Ok(Self { labels, evolved, table })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn table(&self) -> &BTreeMap<Occupation, Verdict> {
        &self.table
    }

    pub fn evolved(&self, label: Label) -> Option<&SparseState> {
        self.labels.iter().position(|&l| l == label).map(|i| &self.evolved[i])
    }

    pub fn verdict(&self, pattern: &Occupation) -> Verdict {
        self.table.get(pattern).cloned().unwrap_or(Verdict::Impossible)
    }

    /// Per-candidate probability of a `Unique` verdict naming it.
    pub fn success_probabilities(&self) -> BTreeMap<Label, Rational> {
        self.mass_where(|label, v| v.unique() == Some(label))
    }

    /// Per-candidate probability of landing on an ambiguous pattern.
    pub fn ambiguous_probabilities(&self) -> BTreeMap<Label, Rational> {
        self.mass_where(|_, v| matches!(v, Verdict::Ambiguous(_)))
    }

    fn mass_where<F: Fn(Label, &Verdict) -> bool>(&self, pick: F) -> BTreeMap<Label, Rational> {
        self.labels
            .iter()
            .zip(&self.evolved)
            .map(|(&label, state)| {
                let mut mass = Rational::zero();
                for occ in state.terms().keys() {
                    if pick(label, &self.table[occ]) {
                        mass += state.probability_of(occ).expect("checked rational at construction");
                    }
                }
                (label, mass)
            })
            .collect()
    }

    pub fn records(&self) -> Vec<ClassifierRecord> {
        self.table
            .iter()
            .map(|(occ, v)| ClassifierRecord {
                pattern: occ.clone(),
                verdict: v.kind().to_string(),
                labels: v.labels(),
                probabilities: self
                    .labels
                    .iter()
                    .zip(&self.evolved)
                    .map(|(&l, s)| (l, rational_string(&s.probability_of(occ).expect("rational"))))
                    .collect(),
            })
            .collect()
    }
}

pub fn success_probabilities(c: &Classifier) -> BTreeMap<Label, Rational> {
    c.success_probabilities()
}

/// Closed-form verdict for a full-count pattern of the `N`-arm scheme
/// (network `S_N`, `2^(N+1)` modes and photons), over `{α, β+, β−}`.
///
/// Odd `n_odd` identifies `α`. Otherwise `D = n_odd − n_even` is a signed sum
/// of distinct powers `2^N, …, 2^(j+1)` (zero for `j = N`), so its lowest set
/// bit recovers `j`; the parity of `n^(j,N+1)` then separates `β+` (even)
/// from `β−` (odd). `|D| = 2^(N+1)` is the irreducibly ambiguous remainder.
pub fn parity_classify(n: usize, pattern: &Occupation) -> Result<Verdict> {
    let modes = 1usize << (n + 1);
    if pattern.modes() != modes {
        return Err(Error::ModeCountMismatch { expected: modes, found: pattern.modes() });
    }
    if pattern.total() != modes {
        return Err(Error::PhotonNumberMismatch { expected: modes, found: pattern.total() });
    }
    if pattern.n_odd() % 2 == 1 {
        return Ok(Verdict::Unique(ArmLabel::Alpha.into()));
    }
    let d = n_diff(pattern).unsigned_abs() as usize;
    if d == modes {
        return Ok(Verdict::Ambiguous([ArmLabel::BetaPlus.into(), ArmLabel::BetaMinus.into()].into()));
    }
    let j = if d == 0 { n } else { (d.trailing_zeros() as usize).saturating_sub(1) };
    let block = BlockSet::new(j, n + 1)?;
    let label = if n_block(&block, pattern)? % 2 == 0 { ArmLabel::BetaPlus } else { ArmLabel::BetaMinus };
    Ok(Verdict::Unique(label.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityKind {
    Even,
    Odd,
    /// Equal probability mass on both parities.
    FiftyFifty,
    Mixed,
}

impl fmt::Display for ParityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityKind::Even => "even",
            ParityKind::Odd => "odd",
            ParityKind::FiftyFifty => "50/50",
            ParityKind::Mixed => "mixed",
        })
    }
}

/// How the support of a state splits by the parity of a photon count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityDistribution {
    pub even_patterns: usize,
    pub odd_patterns: usize,
    pub even_mass: Rational,
    pub odd_mass: Rational,
}

impl ParityDistribution {
    pub fn of<F>(state: &SparseState, count: F) -> Result<Self>
    where
        F: Fn(&Occupation) -> Result<usize>,
    {
        let mut d = Self {
            even_patterns: 0,
            odd_patterns: 0,
            even_mass: Rational::zero(),
            odd_mass: Rational::zero(),
        };
        for occ in state.terms().keys() {
            let p = state.probability_of(occ)?;
            if count(occ)? % 2 == 0 {
                d.even_patterns += 1;
                d.even_mass += p;
            } else {
                d.odd_patterns += 1;
                d.odd_mass += p;
            }
        }
        Ok(d)
    }

    /// Parity of `n^(p,M)` over the support of `state`.
    pub fn of_block(state: &SparseState, block: &BlockSet) -> Result<Self> {
        Self::of(state, |o| n_block(block, o))
    }

    pub fn kind(&self) -> ParityKind {
        if self.odd_patterns == 0 {
            ParityKind::Even
        } else if self.even_patterns == 0 {
            ParityKind::Odd
        } else if self.even_mass == self.odd_mass {
            ParityKind::FiftyFifty
        } else {
            ParityKind::Mixed
        }
    }

    /// `Some` when every support pattern has the same parity.
    pub fn constant(&self) -> Option<ParityKind> {
        match self.kind() {
            k @ (ParityKind::Even | ParityKind::Odd) => Some(k),
            _ => None,
        }
    }
}

/// Outcome of checking parity propagation from the `2^M`-port setup to the
/// `2^(M+1)`-port setup.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub p: usize,
    pub m: usize,
    /// `n^(p,M)` for `theta` through `S_{M-1}`.
    pub small: ParityDistribution,
    /// `n^(p,M+1)` for `theta ⊗ ancilla` through `S_M`.
    pub extended: ParityDistribution,
}

impl LemmaReport {
    /// Whether the input satisfies the hypothesis (constant parity).
    pub fn precondition(&self) -> bool {
        self.small.constant().is_some()
    }

    /// Hypothesis holds and the parity carries over unchanged.
    pub fn holds(&self) -> bool {
        matches!(self.small.constant(), Some(k) if self.extended.constant() == Some(k))
    }
}

/// Evolves `theta` (`2^M` modes, `2^M` photons) through `S_{M−1}` and
/// `theta ⊗ Υ` through `S_M`, where `Υ` is the ancilla occupying ports
/// `2^M + 1 ..= 2^(M+1)`, and reports the parity of the block counts in
/// both setups.
pub fn verify_lemma_parity(p: usize, m: usize, theta: &SparseState) -> Result<LemmaReport> {
    if m == 0 {
        return Err(Error::InvalidParameter { name: "M", reason: "need M >= 1".into() });
    }
    let ports = 1usize << m;
    if theta.mode_count() != ports {
        return Err(Error::ModeCountMismatch { expected: ports, found: theta.mode_count() });
    }
    match theta.photon_number() {
        Some(n) if n == ports => {}
        other => return Err(Error::PhotonNumberMismatch { expected: ports, found: other.unwrap_or(0) }),
    }
    let small_state = evolve(theta, &build_s(m - 1)?)?;
    let big_state = evolve(&theta.tensor(&ancilla_upsilon(m)?)?, &build_s(m)?)?;
    Ok(LemmaReport {
        p,
        m,
        small: ParityDistribution::of_block(&small_state, &BlockSet::new(p, m)?)?,
        extended: ParityDistribution::of_block(&big_state, &BlockSet::new(p, m + 1)?)?,
    })
}

/// Brute-force versus parity-rule comparison for one arm scheme.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub order: usize,
    pub patterns_checked: usize,
    pub disagreements: Vec<(Occupation, Verdict, Verdict)>,
    pub brute_force_success: BTreeMap<Label, Rational>,
    pub parity_success: BTreeMap<Label, Rational>,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty() && self.brute_force_success == self.parity_success
    }
}

/// Runs both classifiers over every reachable pattern of the `N`-arm scheme.
pub fn classifier_equivalence(n: usize) -> Result<EquivalenceReport> {
    if n > 2 {
        return Err(Error::ResourceLimit { what: "equivalence order", requested: n, limit: 2 });
    }
    let scheme = crate::schemes::arm_scheme(n)?;
    let brute = build_classifier(&scheme.candidates, &scheme.network)?;
    let mut disagreements = Vec::new();
    for (occ, verdict) in brute.table() {
        let rule = parity_classify(n, occ)?;
        if &rule != verdict {
            disagreements.push((occ.clone(), verdict.clone(), rule));
        }
    }
    let mut parity_success = BTreeMap::new();
    for &label in brute.labels() {
        let state = brute.evolved(label).expect("label from classifier");
        let mut mass = Rational::zero();
        for occ in state.terms().keys() {
            if parity_classify(n, occ)?.unique() == Some(label) {
                mass += state.probability_of(occ)?;
            }
        }
        parity_success.insert(label, mass);
    }
    Ok(EquivalenceReport {
        order: n,
        patterns_checked: brute.table().len(),
        disagreements,
        brute_force_success: brute.success_probabilities(),
        parity_success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;
    use crate::labels::Sign;
    use crate::states::{arm_state, xi_state};

    fn occ(c: &[u8]) -> Occupation {
        Occupation::new(c.to_vec())
    }

    #[test]
    fn functionals() {
        let o = occ(&[3, 1, 0, 0]);
        assert_eq!(n_odd(&o), 3);
        assert_eq!(n_diff(&o), 2);
    }

    #[test]
    fn block_sets() {
        assert_eq!(BlockSet::new(1, 2).unwrap().members(), &[1, 2]);
        assert_eq!(BlockSet::new(2, 3).unwrap().members(), &[1, 2, 3, 4]);
        assert_eq!(BlockSet::new(0, 2).unwrap().members(), &[1, 3]);
        assert_eq!(BlockSet::new(1, 3).unwrap().members(), &[1, 2, 5, 6]);
        assert!(BlockSet::new(2, 2).is_err());
        let b = BlockSet::new(1, 2).unwrap();
        assert_eq!(n_block(&b, &occ(&[2, 0, 1, 1])).unwrap(), 2);
        assert!(n_block(&b, &occ(&[2, 0])).is_err());
    }

    #[test]
    fn parity_rule_examples() {
        let alpha: Label = ArmLabel::Alpha.into();
        assert_eq!(parity_classify(1, &occ(&[3, 1, 0, 0])).unwrap(), Verdict::Unique(alpha));
        assert!(matches!(parity_classify(1, &occ(&[4, 0, 0, 0])).unwrap(), Verdict::Ambiguous(_)));
        assert_eq!(parity_classify(1, &occ(&[2, 2, 0, 0])).unwrap(), Verdict::Unique(ArmLabel::BetaPlus.into()));
        assert_eq!(parity_classify(1, &occ(&[2, 1, 0, 1])).unwrap(), Verdict::Unique(ArmLabel::BetaMinus.into()));
        assert!(parity_classify(1, &occ(&[2, 1, 0])).is_err());
        assert!(parity_classify(1, &occ(&[2, 1, 0, 0])).is_err());
    }

    #[test]
    fn degenerate_classifier_has_no_success() {
        let s = arm_state(ArmLabel::BetaPlus);
        let c = build_classifier(
            &[(ArmLabel::BetaPlus.into(), s.clone()), (ArmLabel::BetaMinus.into(), s)],
            &build_s(0).unwrap(),
        )
        .unwrap();
        assert!(c.success_probabilities().values().all(Zero::is_zero));
        assert_eq!(c.verdict(&occ(&[1, 1])), Verdict::Impossible);
    }

    #[test]
    fn lemma_examples() {
        let minus = verify_lemma_parity(1, 2, &xi_state(1, Sign::Minus).unwrap()).unwrap();
        assert_eq!(minus.small.kind(), ParityKind::Odd);
        assert_eq!(minus.extended.kind(), ParityKind::Odd);
        assert!(minus.holds());
        let plus = verify_lemma_parity(1, 2, &xi_state(1, Sign::Plus).unwrap()).unwrap();
        assert_eq!(plus.small.kind(), ParityKind::Even);
        assert!(plus.holds());
        let uu = crate::states::ancilla_upsilon(1).unwrap().tensor(&crate::states::ancilla_upsilon(1).unwrap()).unwrap();
        let r = verify_lemma_parity(1, 2, &uu).unwrap();
        assert_eq!(r.small.kind(), ParityKind::Even);
        assert!(r.holds());
        assert_eq!(r.extended.even_mass, rational(1, 1));
    }

    #[test]
    fn lemma_input_checks() {
        let xi = xi_state(1, Sign::Plus).unwrap();
        assert!(verify_lemma_parity(1, 1, &xi).is_err());
        assert!(verify_lemma_parity(2, 2, &xi).is_err());
    }
}
