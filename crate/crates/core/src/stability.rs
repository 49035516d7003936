//! King stability for τ-rigid pairs, the bricks labelling each slot, and the
//! torsion classes they generate.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::decompose::{indecomposable_summands, is_brick, is_isomorphic};
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, Gf, Rational};
use crate::intmat;
use crate::matrix::{IntMatrix, Matrix};
use crate::rep::{direct_sum, hom_basis, hom_dim, trace, ModuleMap, Representation};
use crate::tau_tilting::{Slot, TauPair, TauTilting};

/// Largest `p^dim` the brute-force oracle will enumerate.
pub const BRUTE_FORCE_BUDGET: u64 = 1 << 14;

pub type StabilityVector = Vec<Rational>;

/// `⟨θ, d⟩`.
pub fn pairing(theta: &[Rational], dims: &[usize]) -> Rational {
    theta
        .iter()
        .zip(dims)
        .map(|(t, &d)| t * Rational::from_i64(d as i64))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `Σ α_i g^{M_i} - Σ α_j g^{P_j}` with one weight per slot.
pub fn theta_of_pair(tt: &TauTilting, pair: &TauPair, weights: &[Rational]) -> Result<StabilityVector> {
    assert_eq!(weights.len(), pair.len(), "one weight per summand");
    if weights.iter().any(|w| *w <= Rational::zero()) {
        return Err(Error::NonPositiveWeight);
    }
    let n = tt.n();
    let mut theta = vec![Rational::zero(); n];
    for (r, w) in weights.iter().enumerate() {
        let column = slot_g_vector(tt, pair.slot(r), n);
        for (t, g) in theta.iter_mut().zip(column) {
            *t += w * Rational::from_i64(g);
        }
    }
    Ok(theta)
}

fn slot_g_vector(tt: &TauTilting, slot: Slot, n: usize) -> Vec<i64> {
    match slot {
        Slot::M(id) => tt.g_of(id).to_vec(),
        Slot::P(v) => (0..n).map(|u| -i64::from(u == v)).collect(),
    }
}

/// `θ_r`: unit weights on every slot but `r`.
pub fn theta_of_slot(tt: &TauTilting, pair: &TauPair, r: usize) -> StabilityVector {
    let rest = pair.remove_summand(r);
    if rest.is_empty() {
        return vec![Rational::zero(); tt.n()];
    }
    theta_of_pair(tt, &rest, &vec![Rational::one(); rest.len()]).expect("unit weights")
}

/// Semistability for the θ of a τ-rigid pair `(M, P)`: `Hom(M, X) = 0`,
/// `Hom(X, τM) = 0` and `Hom(P, X) = 0`.
pub fn is_semistable_hom(tt: &TauTilting, x: &Representation<Rational>, rigid: &TauPair) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if rigid.p.iter().any(|&v| x.dims()[v] != 0) {
        return Ok(false);
    }
    for &id in &rigid.m {
        if hom_dim(tt.module(id), x)? != 0 || hom_dim(x, tt.tau_of(id))? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

macro_rules! with_prime {
    ($p:expr, $f:ident, $($arg:expr),*) => {
        match $p {
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            5 => $f::<5>($($arg),*),
            7 => $f::<7>($($arg),*),
            11 => $f::<11>($($arg),*),
            13 => $f::<13>($($arg),*),
            p => Err(Error::UnsupportedPrime(p)),
        }
    };
}

/// Dimension vectors of all subrepresentations of `x` reduced modulo `p`.
pub fn submodule_dim_vectors(x: &Representation<Rational>, p: u64) -> Result<BTreeSet<Vec<usize>>> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let within = u32::try_from(x.total_dim())
        .ok()
        .and_then(|d| p.checked_pow(d))
        .is_some_and(|size| size <= BRUTE_FORCE_BUDGET);
    if !within {
        return Err(Error::BudgetExceeded {
            budget: BRUTE_FORCE_BUDGET,
        });
    }
    with_prime!(p, submodules_over, x)
}

fn reduce<const P: u64>(x: &Representation<Rational>) -> Result<Representation<Gf<P>>> {
    x.convert(Gf::<P>::from_rational).ok_or_else(|| {
        let entry = x
            .maps()
            .iter()
            .flat_map(|m| m.entries())
            .find(|q| Gf::<P>::from_rational(q).is_none())
            .map_or_else(String::new, ToString::to_string);
        Error::DenominatorClash { entry, prime: P }
    })
}

/// Enumerates cyclic submodules, then closes them under sums.
fn submodules_over<const P: u64>(x: &Representation<Rational>) -> Result<BTreeSet<Vec<usize>>> {
    let y = reduce::<P>(x)?;
    let key =
        |spans: &[Matrix<Gf<P>>]| -> Vec<Matrix<Gf<P>>> { spans.iter().map(|s| s.transpose().rref().0).collect() };

    let mut cyclic: Vec<Vec<Matrix<Gf<P>>>> = Vec::new();
    let mut seen = HashSet::new();
    for (v, &d) in y.dims().iter().enumerate() {
        for code in 1..P.pow(d as u32) {
            let vector: Vec<Gf<P>> = (0..d).map(|k| Gf::new((code / P.pow(k as u32) % P) as i64)).collect();
            // one representative per line
            if vector.iter().find(|c| !c.is_zero()).is_some_and(|c| !c.is_one()) {
                continue;
            }
            let spans = y.generated_submodule(&[(v, vector)]);
            if seen.insert(key(&spans)) {
                cyclic.push(spans);
            }
        }
    }

    let zero: Vec<Matrix<Gf<P>>> = y.dims().iter().map(|&d| Matrix::zeros(d, 0)).collect();
    seen.clear();
    seen.insert(key(&zero));
    let mut all = vec![zero];
    let mut next = 0;
    while next < all.len() {
        let current = all[next].clone();
        next += 1;
        for c in &cyclic {
            let sum: Vec<Matrix<Gf<P>>> = current.iter().zip(c).map(|(a, b)| a.hstack(b).column_space()).collect();
            if seen.insert(key(&sum)) {
                if all.len() as u64 >= BRUTE_FORCE_BUDGET {
                    return Err(Error::BudgetExceeded {
                        budget: BRUTE_FORCE_BUDGET,
                    });
                }
                all.push(sum);
            }
        }
    }
    Ok(all
        .iter()
        .map(|spans| spans.iter().map(Matrix::cols).collect())
        .collect())
}

fn king(x: &Representation<Rational>, theta: &[Rational], p: u64, strict: bool) -> Result<bool> {
    if !pairing(theta, x.dims()).is_zero() {
        return Ok(false);
    }
    let subs = submodule_dim_vectors(x, p)?;
    let zero = vec![0; x.dims().len()];
    Ok(subs
        .iter()
        .filter(|d| **d != zero && d.as_slice() != x.dims())
        .all(|d| {
            let value = pairing(theta, d);
            if strict {
                value < Rational::zero()
            } else {
                value <= Rational::zero()
            }
        }))
}

/// King's condition checked over every submodule defined over `GF(p)`.
pub fn is_semistable_bruteforce(x: &Representation<Rational>, theta: &[Rational], p: u64) -> Result<bool> {
    king(x, theta, p, false)
}

pub fn is_stable_bruteforce(x: &Representation<Rational>, theta: &[Rational], p: u64) -> Result<bool> {
    Ok(!x.is_zero() && king(x, theta, p, true)?)
}

/// A nonzero radical endomorphism, if `End(m)` has one.
fn radical_endomorphism(m: &Representation<Rational>) -> Result<Option<ModuleMap<Rational>>> {
    let basis = hom_basis(m, m)?;
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |i, j| basis[i].after(&basis[j]).trace());
    let kernel = gram.kernel();
    if kernel.cols() == 0 {
        return Ok(None);
    }
    let coeffs = kernel.column(0);
    Ok(Some(ModuleMap::linear_combination(&basis, &coeffs)))
}

/// Shrinks `m` to a brick inside the smallest wide subcategory containing it:
/// splits off a summand, or replaces a module by the image of a radical
/// endomorphism, until the endomorphism ring is the ground field.
pub fn extract_brick(m: &Representation<Rational>, seed: u64) -> Result<Representation<Rational>> {
    let mut current = m.clone();
    loop {
        if current.is_zero() {
            return Err(Error::TheoremViolation(
                "brick extraction reached the zero module".into(),
            ));
        }
        if is_brick(&current) {
            return Ok(current);
        }
        let summands = indecomposable_summands(&current, seed)?;
        if summands.len() > 1 {
            current = summands
                .into_iter()
                .min_by_key(Representation::total_dim)
                .expect("nonempty");
            continue;
        }
        let f = radical_endomorphism(&current)?
            .ok_or_else(|| Error::TheoremViolation("endomorphism ring is a proper division algebra".into()))?;
        current = f.image().module;
    }
}

/// The brick `B_r` that is stable for `θ_r`.
///
/// It is extracted from `N = X / trace(U, X)`, where `U` is the M-part of the
/// pair without slot `r` and `X` the summand that the larger completion adds.
pub fn brick_of_slot(
    tt: &mut TauTilting,
    pair: &TauPair,
    r: usize,
    max_dim: usize,
) -> Result<Representation<Rational>> {
    let almost = pair.remove_summand(r);
    let added = match pair.slot(r) {
        Slot::M(id) if !tt.fac_contains(&almost.m, &tt.module(id).clone())? => tt.module(id).clone(),
        _ => {
            let (larger, _) = tt.complete_almost_pair(&almost, max_dim)?;
            let id = larger
                .m
                .iter()
                .copied()
                .find(|id| !almost.m.contains(id))
                .expect("larger completion adds a module");
            tt.module(id).clone()
        }
    };
    let n_r = if almost.m.is_empty() {
        added
    } else {
        let t = trace(&tt.m_module(&almost.m), &added)?;
        added.quotient(t.bases()).module
    };
    let seed = tt.seed();
    let mut found: Vec<Representation<Rational>> = Vec::new();
    for summand in indecomposable_summands(&n_r, seed)? {
        let b = extract_brick(&summand, seed)?;
        if is_semistable_hom(tt, &b, &almost)? {
            found.push(b);
        }
    }
    let Some(first) = found.first().cloned() else {
        return Err(Error::TheoremViolation(format!("no stable brick for slot {}", r + 1)));
    };
    for other in &found[1..] {
        if !is_isomorphic(&first, other, seed)? {
            return Err(Error::TheoremViolation(format!("two stable bricks for slot {}", r + 1)));
        }
    }
    Ok(first)
}

#[derive(Clone, Debug)]
pub struct BrickSlate {
    pub pair: TauPair,
    pub bricks: Vec<Representation<Rational>>,
    /// Registry handles of the bricks.
    pub brick_ids: Vec<usize>,
    /// Columns are the dimension vectors of the bricks.
    pub x_matrix: IntMatrix,
    pub d_matrix: IntMatrix,
}

impl BrickSlate {
    pub fn signs(&self) -> Vec<i64> {
        (0..self.bricks.len()).map(|r| self.d_matrix[r][r]).collect()
    }

    /// `B⁺`: the bricks whose dimension vector is a column of `C`.
    pub fn b_plus(&self) -> Vec<&Representation<Rational>> {
        self.bricks
            .iter()
            .zip(self.signs())
            .filter(|(_, s)| *s == 1)
            .map(|(b, _)| b)
            .collect()
    }

    pub fn b_minus(&self) -> Vec<&Representation<Rational>> {
        self.bricks
            .iter()
            .zip(self.signs())
            .filter(|(_, s)| *s == -1)
            .map(|(b, _)| b)
            .collect()
    }
}

/// Bricks of every slot together with `D = GᵀX`, checked to be a signed
/// identity with `C = XD`.
pub fn brick_slate(tt: &mut TauTilting, pair: &TauPair, max_dim: usize) -> Result<BrickSlate> {
    let bricks = (0..pair.len())
        .map(|r| brick_of_slot(tt, pair, r, max_dim))
        .collect::<Result<Vec<_>>>()?;
    let x_matrix = intmat::from_columns(&bricks.iter().map(Representation::dim_vector).collect::<Vec<_>>());
    let g = tt.g_matrix(pair)?;
    let d_matrix = intmat::mul(&intmat::transpose(&g), &x_matrix);
    let n = pair.len();
    for (i, row) in d_matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let ok = if i == j { v.abs() == 1 } else { v == 0 };
            if !ok {
                return Err(Error::TheoremViolation(format!(
                    "GᵀX is not a signed identity: {d_matrix:?}"
                )));
            }
        }
    }
    let c = tt.c_matrix(pair)?;
    if intmat::mul(&x_matrix, &d_matrix) != c {
        return Err(Error::TheoremViolation("C differs from XD".into()));
    }
    debug_assert_eq!(d_matrix.len(), n);
    let brick_ids = bricks.iter().map(|b| tt.intern(b)).collect::<Result<Vec<_>>>()?;
    Ok(BrickSlate {
        pair: pair.clone(),
        bricks,
        brick_ids,
        x_matrix,
        d_matrix,
    })
}

/// `X ∈ Fac M` for the M-part of `pair`.
pub fn fac_contains(tt: &TauTilting, pair: &TauPair, x: &Representation<Rational>) -> Result<bool> {
    tt.fac_contains(&pair.m, x)
}

/// `X ∈ T(N)`, the smallest torsion class containing the bricks: peel off
/// the trace of the bricks until nothing or nothing new remains.
pub fn minimal_torsion_contains(bricks: &[&Representation<Rational>], x: &Representation<Rational>) -> Result<bool> {
    let mut current = x.clone();
    if bricks.is_empty() {
        return Ok(current.is_zero());
    }
    let generator = direct_sum(&bricks.iter().map(|&b| b.clone()).collect::<Vec<_>>());
    loop {
        if current.is_zero() {
            return Ok(true);
        }
        let t = trace(&generator, &current)?;
        if t.module.is_zero() {
            return Ok(false);
        }
        current = current.quotient(t.bases()).module;
    }
}

/// Pairwise `Hom(B_i, B_j) = 0` for `i ≠ j`.
pub fn is_hom_orthogonal(bricks: &[&Representation<Rational>]) -> Result<bool> {
    for (i, a) in bricks.iter().enumerate() {
        for (j, b) in bricks.iter().enumerate() {
            if i != j && hom_dim(a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FacReport {
    pub hom_orthogonal: bool,
    /// Probes (by index) on which `Fac M` and `T(B⁺)` disagree.
    pub mismatches: Vec<usize>,
    pub probes_checked: usize,
}

impl FacReport {
    pub fn passed(&self) -> bool {
        self.hom_orthogonal && self.mismatches.is_empty()
    }
}

/// Compares `Fac M` with `T(B⁺)` on the probes and on each `M_i`.
pub fn verify_facm_theorem(
    tt: &TauTilting,
    slate: &BrickSlate,
    probes: &[Representation<Rational>],
) -> Result<FacReport> {
    let plus = slate.b_plus();
    let mut report = FacReport {
        hom_orthogonal: is_hom_orthogonal(&plus)?,
        ..FacReport::default()
    };
    let own: Vec<Representation<Rational>> = slate.pair.m.iter().map(|&id| tt.module(id).clone()).collect();
    for (k, x) in probes.iter().chain(&own).enumerate() {
        report.probes_checked += 1;
        if fac_contains(tt, &slate.pair, x)? != minimal_torsion_contains(&plus, x)? {
            report.mismatches.push(k);
        }
    }
    Ok(report)
}

/// The pair whose `B⁺` is the given semibrick, among enumerated slates.
pub fn semibrick_to_pair(
    bricks: &[Representation<Rational>],
    slates: &[BrickSlate],
    seed: u64,
) -> Result<Option<usize>> {
    let refs: Vec<&Representation<Rational>> = bricks.iter().collect();
    if !is_hom_orthogonal(&refs)? {
        return Err(Error::NotHomOrthogonal);
    }
    'slates: for (k, slate) in slates.iter().enumerate() {
        let plus = slate.b_plus();
        if plus.len() != bricks.len() {
            continue;
        }
        let mut used = vec![false; plus.len()];
        for b in bricks {
            let mut matched = false;
            for (i, c) in plus.iter().enumerate() {
                if !used[i] && is_isomorphic(b, c, seed)? {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                continue 'slates;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}
