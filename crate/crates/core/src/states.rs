//! Named input states: Bell states, arm states, the ancilla hierarchy `Υ_j`
//! and the components `Ξ_j^±`, `Γ_N^±` of the odd/even decomposition.
//!
//! Arm-local mode labels: the two input modes are 1 and 2, and `Υ_j` lives
//! on modes `2^j + 1 ..= 2^(j+1)`. All builders return monomial-convention
//! states whose coefficients carry the normalization prefactors.

use crate::error::{Error, Result};
use crate::field::Amplitude;
use crate::fock::{Limits, Occupation, SparseState};
use crate::labels::{ArmLabel, BellLabel, Sign};

fn signed(amp: Amplitude, sign: Sign) -> Amplitude {
    match sign {
        Sign::Plus => amp,
        Sign::Minus => -amp,
    }
}

/// Dual-rail Bell states on modes A, B, C, D.
pub fn bell_state(label: BellLabel) -> SparseState {
    let h = Amplitude::sqrt2_pow(-1);
    let (first, second, sign) = match label {
        BellLabel::PsiPlus => ([1, 0, 0, 1], [0, 1, 1, 0], Sign::Plus),
        BellLabel::PsiMinus => ([1, 0, 0, 1], [0, 1, 1, 0], Sign::Minus),
        BellLabel::PhiPlus => ([1, 0, 1, 0], [0, 1, 0, 1], Sign::Plus),
        BellLabel::PhiMinus => ([1, 0, 1, 0], [0, 1, 0, 1], Sign::Minus),
    };
    SparseState::from_fock(4, [(Occupation::from(first), h.clone()), (Occupation::from(second), signed(h, sign))])
        .expect("single-occupancy terms always convert")
}

/// `α = |11⟩` or `β± = (|20⟩ ± |02⟩)/√2`.
pub fn arm_state(label: ArmLabel) -> SparseState {
    match label {
        ArmLabel::Alpha => SparseState::from_monomials(2, [(Occupation::from([1, 1]), Amplitude::one())])
            .expect("two modes"),
        ArmLabel::BetaPlus => gamma_raw(0, Sign::Plus),
        ArmLabel::BetaMinus => gamma_raw(0, Sign::Minus),
    }
}

/// Two-term state `prefactor · (Π_{m∈first} (a_m†)² ± Π_{m∈second} (a_m†)²)|0⟩`
/// with 0-based mode indices.
fn squared_pair(modes: usize, prefactor: Amplitude, first: &[usize], second: &[usize], sign: Sign) -> SparseState {
    let pattern = |ms: &[usize]| {
        let mut counts = vec![0u8; modes];
        for &m in ms {
            counts[m] = 2;
        }
        Occupation::new(counts)
    };
    SparseState::from_monomials(
        modes,
        [(pattern(first), prefactor.clone()), (pattern(second), signed(prefactor, sign))],
    )
    .expect("patterns built with the right length")
}

/// The ancilla `Υ_j = (|2,0,2,0,…⟩ + |0,2,0,2,…⟩)/√2` on its own `2^j`
/// modes.
pub fn ancilla_upsilon(j: usize) -> Result<SparseState> {
    ancilla_upsilon_with_limits(j, &Limits::default())
}

pub fn ancilla_upsilon_with_limits(j: usize, limits: &Limits) -> Result<SparseState> {
    if j == 0 {
        return Err(Error::InvalidParameter { name: "j", reason: "ancilla index starts at 1".into() });
    }
    if j > limits.max_ancilla_order {
        return Err(Error::ResourceLimit { what: "ancilla order", requested: j, limit: limits.max_ancilla_order });
    }
    let modes = 1usize << j;
    limits.check_modes(modes)?;
    // global label 2^j + 1 + t is odd exactly when the local offset t is even
    let odd: Vec<usize> = (0..modes).step_by(2).collect();
    let even: Vec<usize> = (1..modes).step_by(2).collect();
    let prefactor = Amplitude::sqrt2_pow(-(1 + (1i32 << (j - 1))));
    Ok(squared_pair(modes, prefactor, &odd, &even, Sign::Plus))
}

/// `Υ_1 ⊗ … ⊗ Υ_n` on arm modes `3 ..= 2^(n+1)`; the zero-mode vacuum for
/// `n = 0`.
pub fn upsilon_chain(n: usize) -> Result<SparseState> {
    let parts = (1..=n).map(ancilla_upsilon).collect::<Result<Vec<_>>>()?;
    SparseState::tensor_all(&parts)
}

fn check_component_size(order: usize, limits: &Limits) -> Result<usize> {
    let modes = 1usize.checked_shl(order as u32 + 1).unwrap_or(usize::MAX);
    limits.check_modes(modes)?;
    Ok(modes)
}

/// `Ξ_j^±` on `2^(j+1)` modes, `j ≥ 1`: squared odd modes of the lower half
/// with squared even modes of the upper half, `±` the mirror image.
pub fn xi_state(j: usize, sign: Sign) -> Result<SparseState> {
    if j == 0 {
        return Err(Error::InvalidParameter { name: "j", reason: "Xi is defined for j >= 1".into() });
    }
    let modes = check_component_size(j, &Limits::default())?;
    let half = modes / 2;
    // 0-based index i is the 1-based odd label i + 1 when i is even
    let lower_odd: Vec<usize> = (0..half).step_by(2).collect();
    let lower_even: Vec<usize> = (1..half).step_by(2).collect();
    let upper_odd: Vec<usize> = (half..modes).step_by(2).collect();
    let upper_even: Vec<usize> = (half + 1..modes).step_by(2).collect();
    let first: Vec<usize> = lower_odd.into_iter().chain(upper_even).collect();
    let second: Vec<usize> = lower_even.into_iter().chain(upper_odd).collect();
    let prefactor = Amplitude::sqrt2_pow(-((j as i32 + 1) + (1i32 << j)));
    Ok(squared_pair(modes, prefactor, &first, &second, sign))
}

fn gamma_raw(n: usize, sign: Sign) -> SparseState {
    let modes = 1usize << (n + 1);
    let odd: Vec<usize> = (0..modes).step_by(2).collect();
    let even: Vec<usize> = (1..modes).step_by(2).collect();
    let prefactor = Amplitude::sqrt2_pow(-((n as i32 + 1) + (1i32 << n)));
    squared_pair(modes, prefactor, &odd, &even, sign)
}

/// `Γ_N^±` on `2^(N+1)` modes: every odd mode squared `±` every even mode
/// squared. `Γ_0^± = β±`.
pub fn gamma_state(n: usize, sign: Sign) -> Result<SparseState> {
    check_component_size(n, &Limits::default())?;
    Ok(gamma_raw(n, sign))
}

/// Checks `β± ⊗ Υ_1 ⊗ … ⊗ Υ_N = Σ_j Ξ_j^± ⊗ Υ_{j+1} ⊗ … ⊗ Υ_N + Γ_N^±`
/// as exact state equality.
pub fn verify_decomposition(n: usize, sign: Sign) -> Result<bool> {
    let lhs = arm_state(sign.beta()).tensor(&upsilon_chain(n)?)?;
    let mut rhs = gamma_state(n, sign)?;
    for j in 1..=n {
        let mut term = xi_state(j, sign)?;
        for k in j + 1..=n {
            term = term.tensor(&ancilla_upsilon(k)?)?;
        }
        rhs = rhs.add(&term)?;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    #[test]
    fn bell_states_are_normalized() {
        for label in BellLabel::ALL {
            let s = bell_state(label);
            assert_eq!(s.len(), 2);
            assert_eq!(s.total_probability().unwrap(), rational(1, 1));
        }
        let psi_minus = bell_state(BellLabel::PsiMinus);
        assert_eq!(psi_minus.coeff(&Occupation::from([0, 1, 1, 0])), -Amplitude::sqrt2_pow(-1));
        let phi_plus = bell_state(BellLabel::PhiPlus);
        assert_eq!(phi_plus.coeff(&Occupation::from([0, 1, 0, 1])), Amplitude::sqrt2_pow(-1));
    }

    #[test]
    fn upsilon_one_is_beta_plus() {
        assert_eq!(ancilla_upsilon(1).unwrap(), arm_state(ArmLabel::BetaPlus));
    }

    #[test]
    fn upsilon_two_unrolled() {
        let u2 = ancilla_upsilon(2).unwrap();
        let h = Amplitude::sqrt2_pow(-1);
        let expected = SparseState::from_fock(
            4,
            [(Occupation::from([2, 0, 2, 0]), h.clone()), (Occupation::from([0, 2, 0, 2]), h)],
        )
        .unwrap();
        assert_eq!(u2, expected);
        assert_eq!(u2.total_probability().unwrap(), rational(1, 1));
    }

    #[test]
    fn upsilon_guards() {
        assert!(matches!(ancilla_upsilon(3), Err(Error::ResourceLimit { .. })));
        assert!(ancilla_upsilon(0).is_err());
        let wide = Limits { max_ancilla_order: 3, ..Limits::default() };
        assert_eq!(ancilla_upsilon_with_limits(3, &wide).unwrap().total_probability().unwrap(), rational(1, 1));
    }

    #[test]
    fn xi_one_plus() {
        let xi = xi_state(1, Sign::Plus).unwrap();
        let quarter = Amplitude::from_rational(rational(1, 4));
        assert_eq!(xi.coeff(&Occupation::from([2, 0, 0, 2])), quarter);
        assert_eq!(xi.coeff(&Occupation::from([0, 2, 2, 0])), quarter);
        assert_eq!(xi.len(), 2);
        assert_eq!(xi.total_probability().unwrap(), rational(1, 2));
    }

    #[test]
    fn gamma_one() {
        let g = gamma_state(1, Sign::Minus).unwrap();
        let quarter = Amplitude::from_rational(rational(1, 4));
        assert_eq!(g.coeff(&Occupation::from([2, 0, 2, 0])), quarter);
        assert_eq!(g.coeff(&Occupation::from([0, 2, 0, 2])), -quarter);
        assert_eq!(gamma_state(0, Sign::Plus).unwrap(), arm_state(ArmLabel::BetaPlus));
    }

    #[test]
    fn odd_even_differences() {
        for j in 1..=2 {
            for sign in [Sign::Plus, Sign::Minus] {
                for occ in xi_state(j, sign).unwrap().terms().keys() {
                    assert_eq!(occ.n_odd(), occ.n_even());
                }
                let g = gamma_state(j, sign).unwrap();
                let diffs: Vec<i64> = g.terms().keys().map(|o| o.n_odd() as i64 - o.n_even() as i64).collect();
                let full = 1i64 << (j + 1);
                assert_eq!(diffs.len(), 2);
                assert!(diffs.contains(&full) && diffs.contains(&-full));
            }
        }
    }

    #[test]
    fn gamma_norms() {
        assert_eq!(gamma_state(1, Sign::Plus).unwrap().total_probability().unwrap(), rational(1, 2));
        assert_eq!(gamma_state(2, Sign::Minus).unwrap().total_probability().unwrap(), rational(1, 4));
    }

    #[test]
    fn decomposition_holds() {
        for n in 0..=2 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(verify_decomposition(n, sign).unwrap(), "N={n} {sign:?}");
            }
        }
    }
}
