//! Lossy single-photon sources and lossy number-resolving detectors for the
//! order-1 scheme.
//!
//! Outcome probabilities are kept as polynomials in the source efficiency
//! `η_s` and detector transmittance `η_d`, so the closed forms can be
//! checked coefficient by coefficient before any floating point enters.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{rational, rational_to_f64, Amplitude, Rational};
use crate::fock::{Occupation, SparseState};
use crate::interferometer::{build_s, evolve};
use crate::labels::{ArmLabel, BellLabel, Label};
use crate::schemes::{arm_modes, combine, full_bm, simple_bm, ArmRule};
use crate::states::{ancilla_upsilon, arm_state, bell_state};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImperfectionParams {
    pub eta_s: f64,
    pub eta_d: f64,
}

impl ImperfectionParams {
    pub fn new(eta_s: f64, eta_d: f64) -> Result<Self> {
        for (name, v) in [("eta_s", eta_s), ("eta_d", eta_d)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter { name, reason: format!("{v} is outside [0, 1]") });
            }
        }
        Ok(Self { eta_s, eta_d })
    }

    pub fn ideal() -> Self {
        Self { eta_s: 1.0, eta_d: 1.0 }
    }
}

/// Exponents of `η_s`, `1 − η_s`, `η_d`, `1 − η_d`.
pub type Exponents = [u32; 4];

/// Polynomial in `η_s`, `η_d` stored in the factored basis
/// `η_s^a (1−η_s)^b η_d^c (1−η_d)^e`. Equal polynomials may have different
/// factored forms; compare with [`Weight::expand`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Weight(BTreeMap<Exponents, Rational>);

impl Weight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(exp: Exponents, c: Rational) -> Self {
        let mut w = Self::zero();
        if !c.is_zero() {
            w.0.insert(exp, c);
        }
        w
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_scaled(&mut self, other: &Weight, c: &Rational) {
        for (e, v) in &other.0 {
            let slot = self.0.entry(*e).or_insert_with(Rational::zero);
            *slot += v * c;
            if slot.is_zero() {
                self.0.remove(e);
            }
        }
    }

    /// Expanded into ordinary monomials `η_s^i η_d^j`.
    pub fn expand(&self) -> BTreeMap<(u32, u32), Rational> {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ([a, b, c, e], coef) in &self.0 {
            for (i, bi) in binomial_signed(*b) {
                for (j, ej) in binomial_signed(*e) {
                    let slot = out.entry((a + i, c + j)).or_insert_with(Rational::zero);
                    *slot += coef * Rational::from_integer(&bi * &ej);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn eval(&self, p: ImperfectionParams) -> f64 {
        let (s, d) = (p.eta_s, p.eta_d);
        self.0
            .iter()
            .map(|([a, b, c, e], coef)| {
                rational_to_f64(coef)
                    * s.powi(*a as i32)
                    * (1.0 - s).powi(*b as i32)
                    * d.powi(*c as i32)
                    * (1.0 - d).powi(*e as i32)
            })
            .fold(0.0, |acc, x| acc + x)
    }

    pub fn eval_exact(&self, eta_s: &Rational, eta_d: &Rational) -> Rational {
        let one = Rational::one();
        let pow = |x: &Rational, k: u32| num_traits::pow(x.clone(), k as usize);
        self.0
            .iter()
            .map(|([a, b, c, e], coef)| {
                coef * pow(eta_s, *a) * pow(&(&one - eta_s), *b) * pow(eta_d, *c) * pow(&(&one - eta_d), *e)
            })
            .sum()
    }
}

/// `(1 − x)^n = Σ_i C(n,i) (−1)^i x^i`.
fn binomial_signed(n: u32) -> Vec<(u32, BigInt)> {
    (0..=n)
        .map(|i| {
            let c = binomial(n, i);
            (i, if i % 2 == 1 { -c } else { c })
        })
        .collect()
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Mul for &Weight {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        let mut out = Weight::zero();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &rhs.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_scaled(&Weight::monomial(e, Rational::one()), &(ca * cb));
            }
        }
        out
    }
}

/// Expanded polynomial from `(coefficient, η_s power, η_d power)` triples.
pub fn expanded(terms: &[(Rational, u32, u32)]) -> BTreeMap<(u32, u32), Rational> {
    let mut out = BTreeMap::new();
    for (c, i, j) in terms {
        if !c.is_zero() {
            out.insert((*i, *j), c.clone());
        }
    }
    out
}

/// A mixture as a list of weighted pure branches.
#[derive(Clone, Debug)]
pub struct Ensemble {
    pub branches: Vec<(Weight, SparseState)>,
}

impl Ensemble {
    pub fn evaluated(&self, p: ImperfectionParams) -> Vec<(f64, &SparseState)> {
        self.branches.iter().map(|(w, s)| (w.eval(p), s)).filter(|(w, _)| *w != 0.0).collect()
    }
}

/// Two heralded-source photons meeting at a splitter, as the intended `Υ_1`
/// ancilla: `Υ_1` with weight `η_s²`, vacuum with `(1−η_s)²`, and a lone
/// photon in either mode with `η_s(1−η_s)` each.
pub fn source_ensemble() -> Ensemble {
    let one = rational(1, 1);
    let single = |c: [u8; 2]| SparseState::from_monomials(2, [(Occupation::from(c), Amplitude::one())]).expect("two modes");
    Ensemble {
        branches: vec![
            (Weight::monomial([2, 0, 0, 0], one.clone()), ancilla_upsilon(1).expect("order 1")),
            (Weight::monomial([0, 2, 0, 0], one.clone()), SparseState::vacuum(2)),
            (Weight::monomial([1, 1, 0, 0], one.clone()), single([1, 0])),
            (Weight::monomial([1, 1, 0, 0], one), single([0, 1])),
        ],
    }
}

/// Distribution over patterns with polynomial probabilities.
#[derive(Clone, Debug, Default)]
pub struct OutcomeDistribution {
    pub entries: BTreeMap<Occupation, Weight>,
}

impl OutcomeDistribution {
    pub fn from_state(state: &SparseState, weight: &Weight) -> Result<Self> {
        let mut out = Self::default();
        for (occ, p) in state.probabilities()? {
            out.push(occ, &(weight * &Weight::constant(p)));
        }
        Ok(out)
    }

    fn push(&mut self, occ: Occupation, w: &Weight) {
        let slot = self.entries.entry(occ).or_default();
        *slot = &*slot + w;
    }

    pub fn total(&self) -> Weight {
        self.entries.values().fold(Weight::zero(), |acc, w| &acc + w)
    }
}

/// Every mode loses photons independently: `n` photons are detected as
/// `n − k` with weight `C(n,k) η_d^(n−k) (1−η_d)^k`.
pub fn detector_thinning(ideal: &OutcomeDistribution) -> OutcomeDistribution {
    let mut out = OutcomeDistribution::default();
    for (occ, w) in &ideal.entries {
        let mut partial: Vec<(Vec<u8>, Weight)> = vec![(Vec::new(), w.clone())];
        for &n in occ.counts() {
            let mut next = Vec::with_capacity(partial.len() * (n as usize + 1));
            for (prefix, pw) in &partial {
                for kept in 0..=n {
                    let lost = (n - kept) as u32;
                    let factor =
                        Weight::monomial([0, 0, kept as u32, lost], Rational::from_integer(binomial(n as u32, lost)));
                    let mut counts = prefix.clone();
                    counts.push(kept);
                    next.push((counts, pw * &factor));
                }
            }
            partial = next;
        }
        for (counts, pw) in partial {
            out.push(Occupation::new(counts), &pw);
        }
    }
    out
}

/// Symbolic success, error and inconclusive weights of one input.
#[derive(Clone, Debug, Default)]
pub struct SymbolicOutcome {
    pub success: Weight,
    pub error: Weight,
    pub inconclusive: Weight,
}

impl SymbolicOutcome {
    fn record(&mut self, truth: Label, verdict: Option<Label>, w: &Weight) {
        let slot = match verdict {
            Some(v) if v == truth => &mut self.success,
            Some(_) => &mut self.error,
            None => &mut self.inconclusive,
        };
        *slot = &*slot + w;
    }

    pub fn sum(&self) -> Weight {
        &(&self.success + &self.error) + &self.inconclusive
    }
}

/// The lossy order-1 measurement, per Bell input.
#[derive(Clone, Debug)]
pub struct ImperfectModel {
    pub outcomes: BTreeMap<BellLabel, SymbolicOutcome>,
}

/// Enumerates the 16 source-branch pairs for each Bell input, evolves each
/// through the 8-mode network, thins at the detectors, and classifies every
/// detected pattern. An arm is read only at its full count: three detected
/// photons in both arms give `ψ−`, four in one arm are classified by the
/// arm parity rule, and anything else is inconclusive.
pub fn build_imperfect_model() -> Result<ImperfectModel> {
    let spec = full_bm(1)?;
    let ensemble = source_ensemble();
    let rule = ArmRule::Parity(1);
    let modes = arm_modes(2);
    let outcomes = BellLabel::ALL
        .par_iter()
        .map(|&b| {
            let mut o = SymbolicOutcome::default();
            for (w1, a1) in &ensemble.branches {
                for (w2, a2) in &ensemble.branches {
                    let input = SparseState::tensor_all([&bell_state(b), a1, a2])?;
                    let out = evolve(&input, &spec.network)?;
                    let detected = detector_thinning(&OutcomeDistribution::from_state(&out, &(w1 * w2))?);
                    for (occ, w) in &detected.entries {
                        let verdict = combine(&rule, 2, [occ.select(&modes[0]), occ.select(&modes[1])])?;
                        o.record(b.into(), verdict, w);
                    }
                }
            }
            Ok((b, o))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ImperfectModel { outcomes })
}

/// The model is independent of the efficiencies, so it is built once.
pub fn imperfect_model() -> Result<&'static ImperfectModel> {
    static MODEL: OnceLock<ImperfectModel> = OnceLock::new();
    if let Some(m) = MODEL.get() {
        return Ok(m);
    }
    let built = build_imperfect_model()?;
    Ok(MODEL.get_or_init(|| built))
}

impl ImperfectModel {
    /// Mean success over a uniform Bell prior.
    pub fn total_success(&self) -> Weight {
        let quarter = Weight::constant(rational(1, 4));
        let sum = self.outcomes.values().fold(Weight::zero(), |acc, o| &acc + &o.success);
        &sum * &quarter
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImperfectReport {
    pub params: ImperfectionParams,
    pub success: BTreeMap<BellLabel, f64>,
    pub error: BTreeMap<BellLabel, f64>,
    pub inconclusive: BTreeMap<BellLabel, f64>,
    pub total: f64,
    pub total_error: f64,
}

pub fn imperfect_bm(params: ImperfectionParams) -> Result<ImperfectReport> {
    let model = imperfect_model()?;
    let pick = |f: fn(&SymbolicOutcome) -> &Weight| -> BTreeMap<BellLabel, f64> {
        model.outcomes.iter().map(|(b, o)| (*b, f(o).eval(params))).collect()
    };
    let success = pick(|o| &o.success);
    let error = pick(|o| &o.error);
    let inconclusive = pick(|o| &o.inconclusive);
    let total = success.values().sum::<f64>() / 4.0;
    let total_error = error.values().sum::<f64>() / 4.0;
    Ok(ImperfectReport { params, success, error, inconclusive, total, total_error })
}

/// `½ η_s² η_d⁴ + ¼ η_s⁴ η_d⁶`.
pub fn closed_form_success(p: ImperfectionParams) -> f64 {
    let (s, d) = (p.eta_s, p.eta_d);
    0.5 * s.powi(2) * d.powi(4) + 0.25 * s.powi(4) * d.powi(6)
}

/// Expanded closed form, per Bell input and in total.
pub fn closed_form_symbolic() -> (BTreeMap<BellLabel, BTreeMap<(u32, u32), Rational>>, BTreeMap<(u32, u32), Rational>) {
    let per = [
        (BellLabel::PsiPlus, expanded(&[(rational(1, 1), 2, 4)])),
        (BellLabel::PsiMinus, expanded(&[(rational(1, 1), 4, 6)])),
        (BellLabel::PhiPlus, expanded(&[(rational(1, 2), 2, 4)])),
        (BellLabel::PhiMinus, expanded(&[(rational(1, 2), 2, 4)])),
    ]
    .into_iter()
    .collect();
    (per, expanded(&[(rational(1, 2), 2, 4), (rational(1, 4), 4, 6)]))
}

/// Lossy simple measurement: both photons must be detected, `η_d² / 2`.
pub fn simple_baseline(p: ImperfectionParams) -> f64 {
    0.5 * p.eta_d * p.eta_d
}

/// The simple measurement pushed through the same thinning pipeline.
pub fn simple_baseline_symbolic() -> Result<Weight> {
    let spec = simple_bm()?;
    let c = crate::discrimination::build_classifier(&spec.candidates, &spec.network)?;
    let mut total = Weight::zero();
    for (label, input) in &spec.candidates {
        let out = evolve(input, &spec.network)?;
        let detected = detector_thinning(&OutcomeDistribution::from_state(&out, &Weight::constant(rational(1, 4)))?);
        for (occ, w) in &detected.entries {
            if occ.total() == 2 && c.verdict(occ).unique() == Some(*label) {
                total = &total + w;
            }
        }
    }
    Ok(total)
}

/// The `η_s η_d` product above which the ancilla scheme beats the simple
/// one: with `u = (η_s η_d)²` the condition reads `u² + 2u − 2 ≥ 0`, so the
/// threshold is `√(√3 − 1)`.
pub fn break_even_product() -> f64 {
    (3f64.sqrt() - 1.0).sqrt()
}

/// Number of sign changes of `closed_form − baseline` along `η_s ∈ [0,1]`
/// at fixed `η_d`, sampled at `samples + 1` points. Exact zeros are skipped.
pub fn baseline_crossings(eta_d: f64, samples: usize) -> Result<usize> {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for i in 0..=samples {
        let p = ImperfectionParams::new(i as f64 / samples as f64, eta_d)?;
        let diff = closed_form_success(p) - simple_baseline(p);
        if diff == 0.0 {
            continue;
        }
        let above = diff > 0.0;
        if last.is_some_and(|l| l != above) {
            changes += 1;
        }
        last = Some(above);
    }
    Ok(changes)
}

/// Whether a vacuum ancilla still leaves `α` identifiable by odd `n_odd`:
/// `α ⊗ |00⟩` and `β± ⊗ |00⟩` through `S_1` never share an `n_odd` parity.
pub fn vacuum_ancilla_alpha_intact() -> Result<bool> {
    let s1 = build_s(1)?;
    let vac = SparseState::vacuum(2);
    for a in ArmLabel::ALL {
        let out = evolve(&arm_state(a).tensor(&vac)?, &s1)?;
        let want_odd = a == ArmLabel::Alpha;
        if out.terms().keys().any(|o| (o.n_odd() % 2 == 1) != want_odd) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub grid_points: usize,
    pub max_error: f64,
    /// Error weights that are exactly zero as polynomials.
    pub error_identically_zero: bool,
    pub vacuum_ancilla_alpha_intact: bool,
}

pub fn misidentification_audit(grid: &[ImperfectionParams]) -> Result<AuditReport> {
    let model = imperfect_model()?;
    let mut max_error: f64 = 0.0;
    for &p in grid {
        for o in model.outcomes.values() {
            max_error = max_error.max(o.error.eval(p));
        }
    }
    Ok(AuditReport {
        grid_points: grid.len(),
        max_error,
        error_identically_zero: model.outcomes.values().all(|o| o.error.expand().is_empty()),
        vacuum_ancilla_alpha_intact: vacuum_ancilla_alpha_intact()?,
    })
}

/// `start, start + step, …` up to `end` inclusive, with the count rounded
/// so that decimal steps such as 0.05 land on the endpoint.
pub fn grid_values(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter { name: "step", reason: format!("{step} must be positive") });
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&end) || start > end {
        return Err(Error::InvalidParameter { name: "range", reason: format!("{start}:{end} must satisfy 0 <= start <= end <= 1") });
    }
    let steps = ((end - start) / step + 1e-9).floor().to_usize().unwrap_or(0);
    if steps > 100_000 {
        return Err(Error::ResourceLimit { what: "grid points", requested: steps, limit: 100_000 });
    }
    Ok((0..=steps).map(|i| (start + i as f64 * step).min(1.0)).collect())
}

/// Parses `start:end:step`.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter { name: "range", reason: format!("expected start:end:step, got {text:?}") };
    let parts: Vec<f64> = text.split(':').map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?;
    match parts.as_slice() {
        [a, b, s] => grid_values(*a, *b, *s),
        [a] => grid_values(*a, *a, 1.0),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta_s: f64,
    pub eta_d: f64,
    pub p_psi_plus: f64,
    pub p_psi_minus: f64,
    pub p_phi_plus: f64,
    pub p_phi_minus: f64,
    pub p_total: f64,
    pub p_simple_baseline: f64,
    pub above_baseline: bool,
}

pub const SWEEP_HEADER: &str =
    "eta_s,eta_d,p_psi_plus,p_psi_minus,p_phi_plus,p_phi_minus,p_total,p_simple_baseline,above_baseline";

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{}",
            self.eta_s,
            self.eta_d,
            self.p_psi_plus,
            self.p_psi_minus,
            self.p_phi_plus,
            self.p_phi_minus,
            self.p_total,
            self.p_simple_baseline,
            self.above_baseline
        )
    }
}

/// Pipeline results over the product grid, `η_s` outermost.
pub fn sweep(eta_s: &[f64], eta_d: &[f64]) -> Result<Vec<SweepRow>> {
    let points: Vec<ImperfectionParams> = eta_s
        .iter()
        .flat_map(|&s| eta_d.iter().map(move |&d| ImperfectionParams::new(s, d)))
        .collect::<Result<_>>()?;
    imperfect_model()?;
    points
        .par_iter()
        .map(|&p| {
            let r = imperfect_bm(p)?;
            let baseline = simple_baseline(p);
            Ok(SweepRow {
                eta_s: p.eta_s,
                eta_d: p.eta_d,
                p_psi_plus: r.success[&BellLabel::PsiPlus],
                p_psi_minus: r.success[&BellLabel::PsiMinus],
                p_phi_plus: r.success[&BellLabel::PhiPlus],
                p_phi_minus: r.success[&BellLabel::PhiMinus],
                p_total: r.total,
                p_simple_baseline: baseline,
                above_baseline: r.total > baseline,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

/// Whether `total` never decreases along either axis of the grid.
pub fn monotone_on_grid(eta_s: &[f64], eta_d: &[f64]) -> Result<bool> {
    let model = imperfect_model()?;
    let total = model.total_success();
    let value = |s: f64, d: f64| total.eval(ImperfectionParams { eta_s: s, eta_d: d });
    for (i, &s) in eta_s.iter().enumerate() {
        for (j, &d) in eta_d.iter().enumerate() {
            let here = value(s, d);
            if i + 1 < eta_s.len() && value(eta_s[i + 1], d) < here - 1e-15 {
                return Ok(false);
            }
            if j + 1 < eta_d.len() && value(s, eta_d[j + 1]) < here - 1e-15 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the expanded polynomial has only nonnegative coefficients.
pub fn nonnegative_coefficients(poly: &BTreeMap<(u32, u32), Rational>) -> bool {
    poly.values().all(|c| !c.is_negative())
}
