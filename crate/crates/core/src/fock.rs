//! Occupation patterns and sparse multimode bosonic states.
//!
//! States are kept in the *monomial* convention: a state is a polynomial in
//! the creation operators applied to the vacuum, and the stored coefficient
//! of `Π (a_m†)^{n_m}` is not the normalized Fock amplitude. The Born-rule
//! probability of pattern `n` is `|c_n|² · Π n_m!`. The normalized amplitude
//! `c_n · √(Π n_m!)` frequently leaves Q(i, √2) (three photons in one mode
//! brings in √6), while the monomial coefficients never do.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Amplitude, Rational};

/// Resource caps. Exceeding any of them is an error, never an attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_modes: usize,
    pub max_photons: usize,
    /// Largest recursion order `N` accepted when building `S_N`.
    pub max_network_order: usize,
    /// Largest ancilla index `j` accepted for `Υ_j`.
    pub max_ancilla_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_modes: 16, max_photons: 16, max_network_order: 3, max_ancilla_order: 2 }
    }
}

impl Limits {
    pub fn check_modes(&self, modes: usize) -> Result<()> {
        if modes > self.max_modes {
            return Err(Error::ResourceLimit { what: "mode count", requested: modes, limit: self.max_modes });
        }
        Ok(())
    }

    pub fn check_photons(&self, photons: usize) -> Result<()> {
        if photons > self.max_photons {
            return Err(Error::ResourceLimit {
                what: "photon number",
                requested: photons,
                limit: self.max_photons,
            });
        }
        Ok(())
    }
}

/// Photon counts per mode. Mode labels are 1-based in every public
/// accessor; `counts()[0]` is mode 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Occupation(Vec<u8>);

impl Occupation {
    pub fn new(counts: Vec<u8>) -> Self {
        Self(counts)
    }

    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    /// Count in 1-based mode `mode`.
    pub fn get(&self, mode: usize) -> usize {
        self.0[mode - 1] as usize
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    /// Photons in odd-labelled modes (1, 3, 5, ...).
    pub fn n_odd(&self) -> usize {
        self.0.iter().step_by(2).map(|&n| n as usize).sum()
    }

    /// Photons in even-labelled modes (2, 4, 6, ...).
    pub fn n_even(&self) -> usize {
        self.0.iter().skip(1).step_by(2).map(|&n| n as usize).sum()
    }

    /// Photons in the given 1-based modes.
    pub fn count_in(&self, modes: &[usize]) -> usize {
        modes.iter().map(|&m| self.get(m)).sum()
    }

    /// `Π n_m!` as an exact integer.
    pub fn factorial_weight(&self) -> BigInt {
        self.0
            .iter()
            .flat_map(|&n| 1..=n as u64)
            .fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }

    /// Concatenation: `self` on the first modes, `other` after them.
    pub fn concat(&self, other: &Occupation) -> Occupation {
        let mut counts = self.0.clone();
        counts.extend_from_slice(&other.0);
        Occupation(counts)
    }

    /// The sub-pattern on the listed 1-based modes, in listed order.
    pub fn select(&self, modes: &[usize]) -> Occupation {
        Occupation(modes.iter().map(|&m| self.0[m - 1]).collect())
    }

    pub(crate) fn bump(&mut self, index0: usize) {
        self.0[index0] += 1;
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<Occupation> for String {
    fn from(o: Occupation) -> String {
        o.to_string()
    }
}

impl TryFrom<String> for Occupation {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl std::str::FromStr for Occupation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let counts = s
            .split(',')
            .map(|p| p.trim().parse::<u8>().map_err(|e| format!("bad count {p:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Occupation(counts))
    }
}

impl<const N: usize> From<[u8; N]> for Occupation {
    fn from(counts: [u8; N]) -> Self {
        Occupation(counts.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    NormalizedFock,
    Monomial,
}

impl Convention {
    fn name(self) -> &'static str {
        match self {
            Convention::NormalizedFock => "normalized-fock",
            Convention::Monomial => "monomial",
        }
    }
}

/// `√r` inside Q(√2) for a positive rational `r`, when it exists there.
///
/// Succeeds exactly when `r` or `r/2` is the square of a rational.
pub(crate) fn sqrt_in_field(r: &Rational) -> Option<Amplitude> {
    fn exact_sqrt(q: &Rational) -> Option<Rational> {
        let n = q.numer().sqrt();
        let d = q.denom().sqrt();
        (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
    }
    if r.is_zero() {
        return Some(Amplitude::zero());
    }
    if let Some(s) = exact_sqrt(r) {
        return Some(Amplitude::from_rational(s));
    }
    let half = r / Rational::from_integer(BigInt::from(2));
    exact_sqrt(&half).map(|s| &Amplitude::from_rational(s) * &Amplitude::sqrt2_pow(1))
}

/// A pure state on a fixed number of modes, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseState {
    mode_count: usize,
    terms: BTreeMap<Occupation, Amplitude>,
    convention: Convention,
}

impl SparseState {
    pub fn empty(mode_count: usize, convention: Convention) -> Self {
        Self { mode_count, terms: BTreeMap::new(), convention }
    }

    /// The multimode vacuum.
    pub fn vacuum(mode_count: usize) -> Self {
        let mut s = Self::empty(mode_count, Convention::Monomial);
        s.terms.insert(Occupation::vacuum(mode_count), Amplitude::one());
        s
    }

    /// Builds a monomial-convention state from `(pattern, coefficient)` pairs.
    /// Repeated patterns are summed and zero coefficients dropped.
    pub fn from_monomials<I>(mode_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Amplitude)>,
    {
        Self::from_terms(mode_count, terms, Convention::Monomial)
    }

    /// Builds a state from normalized Fock amplitudes and converts it to the
    /// monomial convention.
    pub fn from_fock<I>(mode_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Amplitude)>,
    {
        Self::from_terms(mode_count, terms, Convention::NormalizedFock)?.to_monomial()
    }

    /// Like [`SparseState::from_fock`], but each amplitude is `c · √r` with
    /// an integer radicand `r`, so amplitudes such as `√3/(4√2)` on `|3,1⟩`
    /// can be given even though `√3` and `√6` lie outside the field. Only the
    /// monomial coefficient `c · √(r / Π n!)` has to be representable.
    pub fn from_fock_with_radicals<I>(mode_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Amplitude, u32)>,
    {
        let mut s = Self::empty(mode_count, Convention::Monomial);
        for (occ, c, radicand) in terms {
            if occ.modes() != mode_count {
                return Err(Error::ModeCountMismatch { expected: mode_count, found: occ.modes() });
            }
            let ratio = Rational::new(BigInt::from(radicand), occ.factorial_weight());
            let root = sqrt_in_field(&ratio).ok_or_else(|| Error::NotRepresentable { pattern: occ.to_string() })?;
            s.add_term(occ, &(&c * &root));
        }
        Ok(s)
    }

    fn from_terms<I>(mode_count: usize, terms: I, convention: Convention) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Amplitude)>,
    {
        let mut s = Self::empty(mode_count, convention);
        for (occ, amp) in terms {
            if occ.modes() != mode_count {
                return Err(Error::ModeCountMismatch { expected: mode_count, found: occ.modes() });
            }
            s.add_term(occ, &amp);
        }
        Ok(s)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn terms(&self) -> &BTreeMap<Occupation, Amplitude> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `n`, zero when absent.
    pub fn coeff(&self, n: &Occupation) -> Amplitude {
        self.terms.get(n).cloned().unwrap_or_else(Amplitude::zero)
    }

    /// Largest photon number over all terms.
    pub fn max_photons(&self) -> usize {
        self.terms.keys().map(Occupation::total).max().unwrap_or(0)
    }

    /// Photon number shared by all terms, if there is one.
    pub fn photon_number(&self) -> Option<usize> {
        let mut totals = self.terms.keys().map(Occupation::total);
        let first = totals.next()?;
        totals.all(|t| t == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, occ: Occupation, amp: &Amplitude) {
        if amp.is_zero() {
            return;
        }
        match self.terms.entry(occ) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(amp.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += amp;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn from_map(
        mode_count: usize,
        terms: BTreeMap<Occupation, Amplitude>,
        convention: Convention,
    ) -> Self {
        debug_assert!(terms.values().all(|a| !a.is_zero()));
        Self { mode_count, terms, convention }
    }

    pub fn scale(&self, factor: &Amplitude) -> Self {
        let mut out = Self::empty(self.mode_count, self.convention);
        for (occ, amp) in &self.terms {
            out.add_term(occ.clone(), &(amp * factor));
        }
        out
    }

    pub fn add(&self, other: &SparseState) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (occ, amp) in &other.terms {
            out.add_term(occ.clone(), amp);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseState) -> Result<Self> {
        self.add(&other.scale(&-Amplitude::one()))
    }

    fn check_compatible(&self, other: &SparseState) -> Result<()> {
        if self.mode_count != other.mode_count {
            return Err(Error::ModeCountMismatch { expected: self.mode_count, found: other.mode_count });
        }
        if self.convention != other.convention {
            return Err(Error::ConventionMismatch { expected: self.convention.name() });
        }
        Ok(())
    }

    /// Tensor product: `self` on the first modes, `other` on the following
    /// ones. In the monomial convention this is plain polynomial
    /// multiplication over disjoint variables.
    pub fn tensor(&self, other: &SparseState) -> Result<Self> {
        if self.convention != other.convention {
            return Err(Error::ConventionMismatch { expected: self.convention.name() });
        }
        let mut out = Self::empty(self.mode_count + other.mode_count, self.convention);
        for (o1, a1) in &self.terms {
            for (o2, a2) in &other.terms {
                out.add_term(o1.concat(o2), &(a1 * a2));
            }
        }
        Ok(out)
    }

    /// Tensor product of a sequence of states.
    pub fn tensor_all<'a, I>(states: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SparseState>,
    {
        let mut acc = Self::vacuum(0);
        for s in states {
            acc = acc.tensor(s)?;
        }
        Ok(acc)
    }

    /// Terms whose pattern satisfies `keep`.
    pub fn filter<F: Fn(&Occupation) -> bool>(&self, keep: F) -> Self {
        let terms = self.terms.iter().filter(|(o, _)| keep(o)).map(|(o, a)| (o.clone(), a.clone())).collect();
        Self::from_map(self.mode_count, terms, self.convention)
    }

    pub(crate) fn require_monomial(&self) -> Result<()> {
        if self.convention != Convention::Monomial {
            return Err(Error::ConventionMismatch { expected: "monomial" });
        }
        Ok(())
    }

    fn convert(&self, target: Convention) -> Result<Self> {
        if self.convention == target {
            return Ok(self.clone());
        }
        let mut out = Self::empty(self.mode_count, target);
        for (occ, amp) in &self.terms {
            let weight = Rational::from_integer(occ.factorial_weight());
            let root = sqrt_in_field(&weight).ok_or_else(|| Error::NotRepresentable { pattern: occ.to_string() })?;
            let factor = match target {
                Convention::NormalizedFock => root,
                Convention::Monomial => root.inv().expect("factorials are nonzero"),
            };
            out.add_term(occ.clone(), &(amp * &factor));
        }
        Ok(out)
    }

    /// Multiplies each coefficient by `√(Π n_m!)`; fails when that factor
    /// is not in Q(i, √2) for some term.
    pub fn to_normalized_fock(&self) -> Result<Self> {
        self.convert(Convention::NormalizedFock)
    }

    pub fn to_monomial(&self) -> Result<Self> {
        self.convert(Convention::Monomial)
    }

    /// Born-rule probability of detecting pattern `n`.
    pub fn probability_of(&self, n: &Occupation) -> Result<Rational> {
        self.require_monomial()?;
        match self.terms.get(n) {
            None => Ok(Rational::zero()),
            Some(amp) => monomial_probability(n, amp),
        }
    }

    /// Sum of all outcome probabilities.
    pub fn total_probability(&self) -> Result<Rational> {
        self.require_monomial()?;
        let mut total = Rational::zero();
        for (occ, amp) in &self.terms {
            total += monomial_probability(occ, amp)?;
        }
        Ok(total)
    }

    /// All outcome probabilities, in pattern order.
    pub fn probabilities(&self) -> Result<BTreeMap<Occupation, Rational>> {
        self.require_monomial()?;
        self.terms.iter().map(|(o, a)| Ok((o.clone(), monomial_probability(o, a)?))).collect()
    }

    /// The unit-modulus phase `φ` with `other = φ · self`, if one exists.
    pub fn relative_phase(&self, other: &SparseState) -> Option<Amplitude> {
        if self.mode_count != other.mode_count || self.convention != other.convention {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (occ, amp) = self.terms.iter().next()?;
        let phase = other.terms.get(occ)? * &amp.inv()?;
        if phase.norm_sq().as_rational() != Some(&Rational::one()) {
            return None;
        }
        let consistent = self.terms.iter().all(|(o, a)| other.terms.get(o).is_some_and(|b| *b == a * &phase));
        consistent.then_some(phase)
    }

    /// Equality up to one global phase.
    pub fn equals_up_to_phase(&self, other: &SparseState) -> bool {
        if self.is_empty() || other.is_empty() {
            return self.is_empty() && other.is_empty();
        }
        self.relative_phase(other).is_some()
    }
}

fn monomial_probability(occ: &Occupation, amp: &Amplitude) -> Result<Rational> {
    let n = amp.norm_sq();
    match n.as_rational() {
        Some(q) => Ok(q * Rational::from_integer(occ.factorial_weight())),
        None => Err(Error::NonRationalProbability { pattern: occ.to_string() }),
    }
}

/// Convenience for `|z|²` as a `(rational, sqrt2)` pair.
pub fn amp_norm_sq(z: &Amplitude) -> (Rational, Rational) {
    let n = z.norm_sq();
    (n.rational, n.sqrt2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    #[test]
    fn occupation_functionals() {
        let o = Occupation::from([3, 1, 0, 0]);
        assert_eq!(o.total(), 4);
        assert_eq!(o.n_odd(), 3);
        assert_eq!(o.n_even(), 1);
        assert_eq!(o.get(2), 1);
        assert_eq!(o.factorial_weight(), BigInt::from(6));
        assert_eq!(o.to_string(), "3,1,0,0");
        assert_eq!("3,1,0,0".parse::<Occupation>().unwrap(), o);
        assert_eq!(o.select(&[2, 1]), Occupation::from([1, 3]));
    }

    #[test]
    fn vacuum_has_unit_probability() {
        let v = SparseState::vacuum(4);
        assert_eq!(v.total_probability().unwrap(), rational(1, 1));
        assert_eq!(v.probability_of(&Occupation::from([1, 0, 0, 0])).unwrap(), rational(0, 1));
    }

    #[test]
    fn fock_conversion_round_trip() {
        // (|20> + |02>)/sqrt2 has monomial coefficient 1/2 on each term
        let h = Amplitude::sqrt2_pow(-1);
        let s = SparseState::from_fock(2, [(Occupation::from([2, 0]), h.clone()), (Occupation::from([0, 2]), h)])
            .unwrap();
        assert_eq!(s.coeff(&Occupation::from([2, 0])), Amplitude::from_rational(rational(1, 2)));
        assert_eq!(s.total_probability().unwrap(), rational(1, 1));
        let back = s.to_normalized_fock().unwrap();
        assert_eq!(back.coeff(&Occupation::from([0, 2])), Amplitude::sqrt2_pow(-1));
    }

    #[test]
    fn fock_conversion_rejects_sqrt3() {
        let s = SparseState::from_monomials(2, [(Occupation::from([3, 1]), Amplitude::one())]).unwrap();
        assert!(matches!(s.to_normalized_fock(), Err(Error::NotRepresentable { .. })));
        // 3!·3! = 36 is a perfect square, so this one converts
        let t = SparseState::from_monomials(2, [(Occupation::from([3, 3]), Amplitude::one())]).unwrap();
        assert_eq!(t.to_normalized_fock().unwrap().coeff(&Occupation::from([3, 3])), Amplitude::from_rational(rational(6, 1)));
    }

    #[test]
    fn non_rational_probability_is_an_error() {
        let z = Amplitude::from_parts(rational(1, 1), rational(0, 1), rational(1, 1), rational(0, 1));
        let s = SparseState::from_monomials(1, [(Occupation::from([1]), z)]).unwrap();
        assert!(matches!(s.probability_of(&Occupation::from([1])), Err(Error::NonRationalProbability { .. })));
        assert!(s.total_probability().is_err());
    }

    #[test]
    fn probability_requires_monomial_convention() {
        let s = SparseState::vacuum(1).to_normalized_fock().unwrap();
        assert!(matches!(s.total_probability(), Err(Error::ConventionMismatch { .. })));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let one = Amplitude::one();
        let s = SparseState::from_monomials(
            1,
            [(Occupation::from([1]), one.clone()), (Occupation::from([1]), -&one)],
        )
        .unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn phase_equality() {
        let s = SparseState::from_monomials(
            2,
            [(Occupation::from([1, 0]), Amplitude::one()), (Occupation::from([0, 1]), Amplitude::i())],
        )
        .unwrap();
        let t = s.scale(&Amplitude::i());
        assert!(s.equals_up_to_phase(&t));
        assert!(!s.equals_up_to_phase(&s.scale(&Amplitude::from_rational(rational(2, 1)))));
    }

    #[test]
    fn tensor_concatenates_modes() {
        let a = SparseState::from_monomials(1, [(Occupation::from([1]), Amplitude::one())]).unwrap();
        let b = SparseState::vacuum(2);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.mode_count(), 3);
        assert_eq!(t.coeff(&Occupation::from([1, 0, 0])), Amplitude::one());
    }
}
