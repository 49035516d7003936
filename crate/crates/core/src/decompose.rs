//! Krull-Schmidt decomposition, isomorphism testing and invariant
//! fingerprints of representations over the rationals.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::matrix::Matrix;
use crate::rep::{hom_basis, hom_dim, ModuleMap, Representation};

/// Isomorphism invariants used for fast rejection and canonical ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub radical_layers: Vec<Vec<usize>>,
    pub socle: Vec<usize>,
    pub top: Vec<usize>,
}

pub fn fingerprint<F: Field>(m: &Representation<F>) -> Fingerprint {
    Fingerprint {
        dims: m.dims().to_vec(),
        end_dim: hom_dim(m, m).expect("same quiver"),
        radical_layers: m.radical_layers(),
        socle: m.socle().module.dims().to_vec(),
        top: m.top().module.dims().to_vec(),
    }
}

/// Canonical order on modules: dimension vectors in decreasing
/// lexicographic order, then the fingerprint.
pub fn canonical_cmp(a: &Fingerprint, b: &Fingerprint) -> Ordering {
    b.dims.cmp(&a.dims).then_with(|| a.cmp(b))
}

/// A seed derived from the inputs so that random choices do not depend on
/// call order.
fn derived_seed(seed: u64, parts: &[&Fingerprint]) -> u64 {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    for p in parts {
        p.hash(&mut h);
    }
    h.finish()
}

const RANDOM_TRIALS: usize = 12;
const COEFF_RANGE: i64 = 1000;

/// Decides `M ≅ N` by looking for an invertible element of `Hom(M, N)`.
///
/// Random integer combinations of a basis are tried first. A combination
/// fails to be invertible only on the zero set of a nonzero determinant
/// polynomial, so a miss on every trial is overwhelmingly unlikely when an
/// isomorphism exists. Small Hom spaces are then searched on a grid.
pub fn is_isomorphic(m: &Representation<Rational>, n: &Representation<Rational>, seed: u64) -> Result<bool> {
    if !m.same_quiver(n) {
        return Err(Error::MismatchedAlgebras);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let (fm, fnn) = (fingerprint(m), fingerprint(n));
    if fm != fnn {
        return Ok(false);
    }
    Ok(find_isomorphism(m, n, seed, &fm, &fnn)?.is_some())
}

fn find_isomorphism(
    m: &Representation<Rational>,
    n: &Representation<Rational>,
    seed: u64,
    fm: &Fingerprint,
    fnn: &Fingerprint,
) -> Result<Option<ModuleMap<Rational>>> {
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, &[fm, fnn]));
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Rational> = (0..basis.len())
            .map(|_| Rational::from_i64(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)))
            .collect();
        let f = ModuleMap::linear_combination(&basis, &coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    if basis.len() <= 4 {
        let values: Vec<i64> = (-2..=2).collect();
        let mut idx = vec![0usize; basis.len()];
        loop {
            let coeffs: Vec<Rational> = idx.iter().map(|&i| Rational::from_i64(values[i])).collect();
            let f = ModuleMap::linear_combination(&basis, &coeffs);
            if f.is_isomorphism() {
                return Ok(Some(f));
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(None);
                }
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    Ok(None)
}

/// Dimension of `End(M)` modulo its radical, read off from the rank of the
/// trace form `(x, y) -> tr(xy)`. Valid in characteristic zero.
pub fn semisimple_rank(basis: &[ModuleMap<Rational>]) -> usize {
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |i, j| basis[i].after(&basis[j]).trace());
    gram.rank()
}

/// Is `End(M)` one-dimensional?
pub fn is_brick(m: &Representation<Rational>) -> bool {
    !m.is_zero() && hom_dim(m, m).expect("same quiver") == 1
}

/// Splits `M` into indecomposable summands, without grouping.
pub fn indecomposable_summands(m: &Representation<Rational>, seed: u64) -> Result<Vec<Representation<Rational>>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match split_once(&x, seed)? {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => out.push(x),
        }
    }
    Ok(out)
}

/// Decomposes `M` into indecomposables with multiplicities, in canonical
/// order.
pub fn decompose(m: &Representation<Rational>, seed: u64) -> Result<Vec<(Representation<Rational>, usize)>> {
    let mut groups: Vec<(Representation<Rational>, Fingerprint, usize)> = Vec::new();
    for x in indecomposable_summands(m, seed)? {
        let fx = fingerprint(&x);
        let mut found = false;
        for (y, fy, mult) in groups.iter_mut() {
            if *fy == fx && find_isomorphism(&x, y, seed, &fx, fy)?.is_some() {
                *mult += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((x, fx, 1));
        }
    }
    groups.sort_by(|a, b| canonical_cmp(&a.1, &b.1));
    Ok(groups.into_iter().map(|(x, _, k)| (x, k)).collect())
}

/// Tries to write `M = A ⊕ B` with both parts nonzero. Returns `None` when
/// `M` is indecomposable.
fn split_once(
    m: &Representation<Rational>,
    seed: u64,
) -> Result<Option<(Representation<Rational>, Representation<Rational>)>> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(None);
    }
    let rank = semisimple_rank(&basis);
    if rank == 1 {
        return Ok(None);
    }
    for f in candidate_endomorphisms(&basis, seed) {
        if let Some(parts) = fitting_split(m, &f) {
            return Ok(Some(parts));
        }
    }
    Err(Error::SplittingFailure { rank })
}

fn candidate_endomorphisms(basis: &[ModuleMap<Rational>], seed: u64) -> impl Iterator<Item = ModuleMap<Rational>> + '_ {
    let k = basis.len();
    let singles = (0..k).map(move |i| basis[i].clone());
    let pairs = (0..k).flat_map(move |i| {
        (i + 1..k).flat_map(move |j| {
            [1i64, -1, 2].into_iter().map(move |c| {
                ModuleMap::linear_combination(
                    &[basis[i].clone(), basis[j].clone()],
                    &[Rational::from_i64(1), Rational::from_i64(c)],
                )
            })
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let random = (0..200).map(move |_| {
        let coeffs: Vec<Rational> = (0..k).map(|_| Rational::from_i64(rng.gen_range(-3..=3))).collect();
        ModuleMap::linear_combination(basis, &coeffs)
    });
    singles.chain(pairs).chain(random)
}

/// Fitting decomposition along a rational eigenvalue `λ` of `f`:
/// `M = ker (f-λ)^N ⊕ im (f-λ)^N`.
fn fitting_split(
    m: &Representation<Rational>,
    f: &ModuleMap<Rational>,
) -> Option<(Representation<Rational>, Representation<Rational>)> {
    let total = Matrix::block_diagonal(f.components());
    let n = m.total_dim();
    for lambda in Rational::eigenvalues_in_field(&total) {
        let shifted = f.minus_scalar(&lambda);
        let components: Vec<Matrix<Rational>> = shifted.components().iter().map(|c| c.pow(n)).collect();
        let power = ModuleMap::new_unchecked(m.clone(), m.clone(), components);
        let kernel = power.kernel();
        let image = power.image();
        if !kernel.module.is_zero() && !image.module.is_zero() {
            return Some((kernel.module, image.module));
        }
    }
    None
}

/// Removes repeated isomorphism classes, keeping the first representative.
pub fn basic_part(modules: &[Representation<Rational>], seed: u64) -> Result<Vec<Representation<Rational>>> {
    let mut out: Vec<(Representation<Rational>, Fingerprint)> = Vec::new();
    for x in modules {
        let fx = fingerprint(x);
        let mut dup = false;
        for (y, fy) in &out {
            if *fy == fx && find_isomorphism(x, y, seed, &fx, fy)?.is_some() {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push((x.clone(), fx));
        }
    }
    Ok(out.into_iter().map(|(x, _)| x).collect())
}

/// Interning table of indecomposable modules up to isomorphism.
#[derive(Clone, Debug, Default)]
pub struct ModuleRegistry {
    modules: Vec<Representation<Rational>>,
    fingerprints: Vec<Fingerprint>,
    seed: u64,
}

impl ModuleRegistry {
    pub fn new(seed: u64) -> Self {
        ModuleRegistry {
            modules: Vec::new(),
            fingerprints: Vec::new(),
            seed,
        }
    }

    /// Handle of the class of `m`, inserting it if new.
    pub fn intern(&mut self, m: &Representation<Rational>) -> Result<usize> {
        let fm = fingerprint(m);
        if let Some(id) = self.lookup_with(m, &fm)? {
            return Ok(id);
        }
        self.modules.push(m.clone());
        self.fingerprints.push(fm);
        Ok(self.modules.len() - 1)
    }

    pub fn lookup(&self, m: &Representation<Rational>) -> Result<Option<usize>> {
        self.lookup_with(m, &fingerprint(m))
    }

    fn lookup_with(&self, m: &Representation<Rational>, fm: &Fingerprint) -> Result<Option<usize>> {
        for (id, (x, fx)) in self.modules.iter().zip(&self.fingerprints).enumerate() {
            if fx == fm && (m.is_zero() || find_isomorphism(m, x, self.seed, fm, fx)?.is_some()) {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    pub fn get(&self, id: usize) -> &Representation<Rational> {
        &self.modules[id]
    }

    pub fn fingerprint(&self, id: usize) -> &Fingerprint {
        &self.fingerprints[id]
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn modules(&self) -> &[Representation<Rational>] {
        &self.modules
    }

    /// Canonical comparison of two handles.
    pub fn cmp_ids(&self, a: usize, b: usize) -> Ordering {
        canonical_cmp(&self.fingerprints[a], &self.fingerprints[b]).then(a.cmp(&b))
    }

    /// Radical-layer descriptor such as `1\2`, with vertices 1-based.
    pub fn describe(&self, id: usize) -> String {
        let base = describe_layers(&self.fingerprints[id]);
        let clash = self
            .fingerprints
            .iter()
            .enumerate()
            .filter(|(_, f)| describe_layers(f) == base)
            .map(|(k, _)| k)
            .collect::<Vec<_>>();
        if clash.len() > 1 {
            let pos = clash.iter().position(|&k| k == id).unwrap_or(0);
            format!("{base}#{}", pos + 1)
        } else {
            base
        }
    }
}

/// Loewy-layer description: each layer lists its composition factors.
pub fn describe_layers(f: &Fingerprint) -> String {
    if f.dims.iter().all(|&d| d == 0) {
        return "0".into();
    }
    let mut layers = Vec::new();
    for (k, layer) in f.radical_layers.iter().enumerate() {
        let next = f.radical_layers.get(k + 1);
        let mut factors = Vec::new();
        for (v, &d) in layer.iter().enumerate() {
            let below = next.map_or(0, |n| n[v]);
            for _ in 0..(d - below) {
                factors.push((v + 1).to_string());
            }
        }
        layers.push(factors.join(","));
    }
    layers.join("\\")
}
