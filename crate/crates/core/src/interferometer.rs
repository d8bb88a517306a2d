//! Passive linear-optical networks and exact state evolution.
//!
//! A network is an `M × M` unitary acting on creation operators:
//! `a_j† → Σ_k U[j,k] a_k†`. Row `j` is the image of input mode `j`.
//! Composition follows that convention, so `first.then(&second)` is the
//! matrix product `first · second`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{Convention, Limits, Occupation, SparseState};
use crate::field::Amplitude;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interferometer {
    mode_count: usize,
    // row-major
    entries: Vec<Amplitude>,
}

impl Interferometer {
    pub fn identity(mode_count: usize) -> Self {
        let mut entries = vec![Amplitude::zero(); mode_count * mode_count];
        for j in 0..mode_count {
            entries[j * mode_count + j] = Amplitude::one();
        }
        Self { mode_count, entries }
    }

    /// Wraps a row-major matrix after checking unitarity exactly.
    pub fn from_rows(rows: Vec<Vec<Amplitude>>) -> Result<Self> {
        let m = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::ModeCountMismatch { expected: m, found: bad.len() });
        }
        let u = Self { mode_count: m, entries: rows.into_iter().flatten().collect() };
        if !u.is_unitary() {
            return Err(Error::NotUnitary);
        }
        Ok(u)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    /// Entry `U[j,k]` with 1-based indices.
    pub fn entry(&self, j: usize, k: usize) -> &Amplitude {
        &self.entries[(j - 1) * self.mode_count + (k - 1)]
    }

    fn at(&self, j0: usize, k0: usize) -> &Amplitude {
        &self.entries[j0 * self.mode_count + k0]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Amplitude]> {
        self.entries.chunks(self.mode_count.max(1))
    }

    pub fn adjoint(&self) -> Self {
        let m = self.mode_count;
        let mut entries = Vec::with_capacity(m * m);
        for j in 0..m {
            for k in 0..m {
                entries.push(self.at(k, j).conj());
            }
        }
        Self { mode_count: m, entries }
    }

    fn matmul(&self, other: &Self) -> Self {
        let m = self.mode_count;
        let mut entries = vec![Amplitude::zero(); m * m];
        for j in 0..m {
            for l in 0..m {
                let a = self.at(j, l);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    let b = other.at(l, k);
                    if !b.is_zero() {
                        entries[j * m + k] += &(a * b);
                    }
                }
            }
        }
        Self { mode_count: m, entries }
    }

    /// `U · U† = 1`, checked exactly.
    pub fn is_unitary(&self) -> bool {
        self.matmul(&self.adjoint()) == Self::identity(self.mode_count)
    }

    /// The network that applies `self` and then `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.mode_count != next.mode_count {
            return Err(Error::ModeCountMismatch { expected: self.mode_count, found: next.mode_count });
        }
        Ok(self.matmul(next))
    }

    /// Places `self` on the listed 1-based modes of an `mode_count`-mode
    /// network, acting as the identity elsewhere. `modes[i]` receives local
    /// mode `i + 1`.
    pub fn embed(&self, mode_count: usize, modes: &[usize]) -> Result<Self> {
        if modes.len() != self.mode_count {
            return Err(Error::ModeCountMismatch { expected: self.mode_count, found: modes.len() });
        }
        let mut seen = vec![false; mode_count];
        for &m in modes {
            if m == 0 || m > mode_count || seen[m - 1] {
                return Err(Error::ModeIndexOutOfRange { index: m, modes: mode_count });
            }
            seen[m - 1] = true;
        }
        let mut out = Self::identity(mode_count);
        for (lj, &gj) in modes.iter().enumerate() {
            for (lk, &gk) in modes.iter().enumerate() {
                out.entries[(gj - 1) * mode_count + (gk - 1)] = self.at(lj, lk).clone();
            }
        }
        Ok(out)
    }

    /// Block-diagonal combination, `self` on the first modes.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let m = self.mode_count + other.mode_count;
        let mut out = Self::identity(m);
        for j in 0..self.mode_count {
            for k in 0..self.mode_count {
                out.entries[j * m + k] = self.at(j, k).clone();
            }
        }
        let off = self.mode_count;
        for j in 0..other.mode_count {
            for k in 0..other.mode_count {
                out.entries[(off + j) * m + off + k] = other.at(j, k).clone();
            }
        }
        out
    }

    /// Nested arrays of canonical amplitude strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            self.rows().map(|r| r.iter().map(Amplitude::canonical_string).collect()).collect();
        serde_json::json!({ "modes": self.mode_count, "entries": rows })
    }
}

/// The 50:50 splitter `(1, i; i, 1)/√2` on 1-based modes `i < j`.
pub fn beam_splitter(mode_count: usize, i: usize, j: usize) -> Result<Interferometer> {
    if i == 0 || i > mode_count {
        return Err(Error::ModeIndexOutOfRange { index: i, modes: mode_count });
    }
    if j <= i || j > mode_count {
        return Err(Error::ModeIndexOutOfRange { index: j, modes: mode_count });
    }
    let h = Amplitude::sqrt2_pow(-1);
    let ih = &Amplitude::i() * &h;
    let block = Interferometer {
        mode_count: 2,
        entries: vec![h.clone(), ih.clone(), ih, h],
    };
    block.embed(mode_count, &[i, j])
}

/// The recursive arm network `S_N` on `2^(N+1)` modes:
/// `S_0 = 1₂` and `S_N = (S, iS; iS, S)/√2` with `S = S_{N-1}`.
pub fn build_s(order: usize) -> Result<Interferometer> {
    build_s_with_limits(order, &Limits::default())
}

pub fn build_s_with_limits(order: usize, limits: &Limits) -> Result<Interferometer> {
    if order > limits.max_network_order {
        return Err(Error::ResourceLimit {
            what: "network order",
            requested: order,
            limit: limits.max_network_order,
        });
    }
    limits.check_modes(1 << (order + 1))?;
    let h = Amplitude::sqrt2_pow(-1);
    let ih = &Amplitude::i() * &h;
    let mut s = Interferometer::identity(2);
    for _ in 0..order {
        let half = s.mode_count;
        let m = 2 * half;
        let mut entries = vec![Amplitude::zero(); m * m];
        for j in 0..half {
            for k in 0..half {
                let v = s.at(j, k);
                if v.is_zero() {
                    continue;
                }
                let direct = v * &h;
                let crossed = v * &ih;
                entries[j * m + k] = direct.clone();
                entries[(j + half) * m + (k + half)] = direct;
                entries[j * m + (k + half)] = crossed.clone();
                entries[(j + half) * m + k] = crossed;
            }
        }
        s = Interferometer { mode_count: m, entries };
    }
    Ok(s)
}

/// Evolves a monomial-convention state through `u`.
///
/// Each creation operator `a_j†` is replaced by `Σ_k U[j,k] a_k†`, one
/// photon at a time, merging equal monomials after every step. Only the
/// reachable support is ever materialized.
pub fn evolve(state: &SparseState, u: &Interferometer) -> Result<SparseState> {
    evolve_with_limits(state, u, &Limits::default())
}

pub fn evolve_with_limits(state: &SparseState, u: &Interferometer, limits: &Limits) -> Result<SparseState> {
    state.require_monomial()?;
    if state.mode_count() != u.mode_count {
        return Err(Error::ModeCountMismatch { expected: u.mode_count, found: state.mode_count() });
    }
    limits.check_modes(u.mode_count)?;
    limits.check_photons(state.max_photons())?;

    let m = u.mode_count;
    // nonzero entries per row
    let sparse_rows: Vec<Vec<(usize, &Amplitude)>> = (0..m)
        .map(|j| (0..m).filter_map(|k| Some((k, u.at(j, k))).filter(|(_, a)| !a.is_zero())).collect())
        .collect();

    let mut total: HashMap<Occupation, Amplitude> = HashMap::new();
    for (occ, coeff) in state.terms() {
        let mut poly: HashMap<Occupation, Amplitude> = HashMap::new();
        poly.insert(Occupation::vacuum(m), coeff.clone());
        for (j, &n) in occ.counts().iter().enumerate() {
            for _ in 0..n {
                let mut next: HashMap<Occupation, Amplitude> = HashMap::with_capacity(poly.len() * 2);
                for (o, c) in &poly {
                    for &(k, entry) in &sparse_rows[j] {
                        let mut o2 = o.clone();
                        o2.bump(k);
                        let term = c * entry;
                        next.entry(o2).and_modify(|acc| *acc += &term).or_insert(term);
                    }
                }
                poly = next;
            }
        }
        for (o, c) in poly {
            if let Some(acc) = total.get_mut(&o) {
                *acc += &c;
            } else {
                total.insert(o, c);
            }
        }
    }
    let terms = total.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    Ok(SparseState::from_map(m, terms, Convention::Monomial))
}

/// Transition coefficient of the output monomial `output` for the input
/// monomial `input`, computed independently of [`evolve`] as
/// `perm(U[input, output]) / Π output_k!`.
///
/// The submatrix repeats row `j` of `u` `input_j` times and column `k`
/// `output_k` times. The permanent over-counts each assignment of photons to
/// a multi-occupied output mode by the permutations of its copies, hence the
/// output factorials.
pub fn permanent_amplitude(input: &Occupation, output: &Occupation, u: &Interferometer) -> Result<Amplitude> {
    let m = u.mode_count;
    for o in [input, output] {
        if o.modes() != m {
            return Err(Error::ModeCountMismatch { expected: m, found: o.modes() });
        }
    }
    if input.total() != output.total() {
        return Err(Error::PhotonNumberMismatch { expected: input.total(), found: output.total() });
    }
    let rows: Vec<usize> =
        input.counts().iter().enumerate().flat_map(|(j, &n)| std::iter::repeat_n(j, n as usize)).collect();
    let cols: Vec<usize> =
        output.counts().iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize)).collect();
    let matrix: Vec<Vec<Amplitude>> =
        rows.iter().map(|&j| cols.iter().map(|&k| u.at(j, k).clone()).collect()).collect();
    let perm = crate::permanent::ryser(&matrix);
    let weight = crate::field::Rational::from_integer(output.factorial_weight());
    Ok(perm.scale(&num_traits::Inv::inv(weight)))
}

/// Matrix in serializable form for reports.
#[derive(Serialize)]
pub struct NetworkDump {
    pub name: String,
    pub modes: usize,
    pub entries: Vec<Vec<String>>,
}

impl NetworkDump {
    pub fn new(name: &str, u: &Interferometer) -> Self {
        Self {
            name: name.to_string(),
            modes: u.mode_count,
            entries: u.rows().map(|r| r.iter().map(Amplitude::canonical_string).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn mono(modes: usize, terms: &[(&[u8], Amplitude)]) -> SparseState {
        SparseState::from_monomials(modes, terms.iter().map(|(o, a)| (Occupation::new(o.to_vec()), a.clone())))
            .unwrap()
    }

    #[test]
    fn splitter_is_unitary() {
        let bs = beam_splitter(2, 1, 2).unwrap();
        assert!(bs.is_unitary());
        assert!(beam_splitter(5, 2, 4).unwrap().is_unitary());
    }

    #[test]
    fn splitter_rejects_bad_indices() {
        assert!(matches!(beam_splitter(2, 2, 1), Err(Error::ModeIndexOutOfRange { .. })));
        assert!(matches!(beam_splitter(2, 0, 1), Err(Error::ModeIndexOutOfRange { .. })));
        assert!(matches!(beam_splitter(2, 1, 3), Err(Error::ModeIndexOutOfRange { .. })));
    }

    #[test]
    fn single_photon_through_splitter() {
        let bs = beam_splitter(2, 1, 2).unwrap();
        let out = evolve(&mono(2, &[(&[1, 0], Amplitude::one())]), &bs).unwrap();
        let h = Amplitude::sqrt2_pow(-1);
        assert_eq!(out.coeff(&Occupation::from([1, 0])), h);
        assert_eq!(out.coeff(&Occupation::from([0, 1])), &Amplitude::i() * &h);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn hong_ou_mandel() {
        // (a1 + i a2)(i a1 + a2)/2 = i/2 (a1² + a2²) expanded by hand
        let bs = beam_splitter(2, 1, 2).unwrap();
        let out = evolve(&mono(2, &[(&[1, 1], Amplitude::one())]), &bs).unwrap();
        let half_i = Amplitude::from_parts(rational(0, 1), rational(1, 2), rational(0, 1), rational(0, 1));
        assert_eq!(out.len(), 2);
        assert_eq!(out.coeff(&Occupation::from([2, 0])), half_i);
        assert_eq!(out.coeff(&Occupation::from([0, 2])), half_i);
        assert_eq!(out.total_probability().unwrap(), rational(1, 1));
    }

    #[test]
    fn s0_and_s1() {
        assert_eq!(build_s(0).unwrap(), Interferometer::identity(2));
        let s1 = build_s(1).unwrap();
        let h = Amplitude::sqrt2_pow(-1);
        let ih = &Amplitude::i() * &h;
        let z = Amplitude::zero();
        let expected = Interferometer::from_rows(vec![
            vec![h.clone(), z.clone(), ih.clone(), z.clone()],
            vec![z.clone(), h.clone(), z.clone(), ih.clone()],
            vec![ih.clone(), z.clone(), h.clone(), z.clone()],
            vec![z.clone(), ih, z, h],
        ])
        .unwrap();
        assert_eq!(s1, expected);
    }

    #[test]
    fn s_n_is_unitary_with_uniform_modulus_and_parity_blocks() {
        for order in 0..=3 {
            let s = build_s(order).unwrap();
            assert_eq!(s.mode_count(), 1 << (order + 1));
            assert!(s.is_unitary());
            let modulus = rational(1, 1 << order);
            for j in 1..=s.mode_count() {
                for k in 1..=s.mode_count() {
                    let e = s.entry(j, k);
                    if (j + k) % 2 == 1 {
                        assert!(e.is_zero(), "parity mixing at ({j},{k})");
                    } else {
                        assert_eq!(e.norm_sq().as_rational(), Some(&modulus));
                    }
                }
            }
        }
    }

    #[test]
    fn s_order_guard() {
        assert!(matches!(build_s(4), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn composition_matches_sequential_evolution() {
        let a = beam_splitter(3, 1, 2).unwrap();
        let b = beam_splitter(3, 2, 3).unwrap();
        let input = mono(3, &[(&[1, 1, 1], Amplitude::one())]);
        let step = evolve(&evolve(&input, &a).unwrap(), &b).unwrap();
        let joint = evolve(&input, &a.then(&b).unwrap()).unwrap();
        assert_eq!(step, joint);
    }

    #[test]
    fn evolve_checks_modes_and_limits() {
        let s = build_s(1).unwrap();
        assert!(matches!(evolve(&SparseState::vacuum(2), &s), Err(Error::ModeCountMismatch { .. })));
        let crowded = mono(4, &[(&[17, 0, 0, 0], Amplitude::one())]);
        assert!(matches!(evolve(&crowded, &s), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn permanent_trivial_and_mismatch() {
        let id = Interferometer::identity(2);
        let one = Occupation::from([1, 0]);
        assert_eq!(permanent_amplitude(&one, &one, &id).unwrap(), Amplitude::one());
        assert!(matches!(
            permanent_amplitude(&one, &Occupation::from([1, 1]), &id),
            Err(Error::PhotonNumberMismatch { .. })
        ));
    }

    #[test]
    fn embed_rejects_duplicates() {
        let bs = beam_splitter(2, 1, 2).unwrap();
        assert!(bs.embed(4, &[1, 1]).is_err());
        assert!(bs.embed(4, &[1, 5]).is_err());
    }
}
