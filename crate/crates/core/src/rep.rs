//! Quiver representations and the linear algebra of their morphisms.
//!
//! A right module over a bound quiver algebra is stored as one vector space
//! per vertex and one matrix per arrow, acting along the arrow direction:
//! for `a: i -> j` the matrix is `dim_j x dim_i`.

use std::sync::Arc;

use crate::algebra::Quiver;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{quotient_data, span_intersection, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation<F> {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Arc<Vec<Matrix<F>>>,
}

impl<F: Field> Representation<F> {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n_vertices() {
            return Err(Error::InvalidRepresentation(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.n_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Representation {
            quiver,
            dims,
            maps: Arc::new(maps),
        })
    }

    pub(crate) fn new_unchecked(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        debug_assert!(Self::new(quiver.clone(), dims.clone(), maps.clone()).is_ok());
        Representation {
            quiver,
            dims,
            maps: Arc::new(maps),
        }
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.n_vertices()];
        let maps = vec![Matrix::zeros(0, 0); quiver.arrows().len()];
        Representation::new_unchecked(quiver, dims, maps)
    }

    /// The simple module at vertex `i` (0-based).
    pub fn simple(quiver: Arc<Quiver>, i: usize) -> Self {
        let mut dims = vec![0; quiver.n_vertices()];
        dims[i] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation::new_unchecked(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn arrow_map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    /// The matrix by which a path (sequence of arrows) acts.
    pub fn path_action(&self, source: usize, arrows: &[usize]) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dims[source]);
        for &a in arrows {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    pub fn same_quiver(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver
    }

    /// Reduces all entries into another field.
    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Representation<G>> {
        let maps = self.maps.iter().map(|m| m.try_map(&f)).collect::<Option<Vec<_>>>()?;
        Some(Representation::new_unchecked(
            self.quiver.clone(),
            self.dims.clone(),
            maps,
        ))
    }

    /// Restricts `self` to a submodule given by per-vertex bases (columns).
    /// The spaces must be closed under the arrow maps.
    pub fn restrict(&self, bases: Vec<Matrix<F>>) -> Subrep<F> {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let image = &self.maps[k] * &bases[a.source];
                bases[a.target]
                    .solve_matrix(&image)
                    .expect("subspaces are closed under the arrow maps")
            })
            .collect();
        let module = Representation::new_unchecked(self.quiver.clone(), dims, maps);
        let inclusion = ModuleMap::new_unchecked(module.clone(), self.clone(), bases);
        Subrep { module, inclusion }
    }

    /// Quotient of `self` by a submodule given by per-vertex bases.
    pub fn quotient(&self, bases: &[Matrix<F>]) -> Quotient<F> {
        let data: Vec<(Matrix<F>, Matrix<F>)> = bases.iter().map(quotient_data).collect();
        let dims = data.iter().map(|(q, _)| q.rows()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| &(&data[a.target].0 * &self.maps[k]) * &data[a.source].1)
            .collect();
        let module = Representation::new_unchecked(self.quiver.clone(), dims, maps);
        let projection =
            ModuleMap::new_unchecked(self.clone(), module.clone(), data.into_iter().map(|(q, _)| q).collect());
        Quotient { module, projection }
    }

    /// Smallest submodule containing the given vectors `(vertex, vector)`.
    pub fn generated_submodule(&self, generators: &[(usize, Vec<F>)]) -> Vec<Matrix<F>> {
        let n = self.dims.len();
        let mut spans: Vec<Matrix<F>> = (0..n).map(|v| Matrix::zeros(self.dims[v], 0)).collect();
        for (v, x) in generators {
            spans[*v] = spans[*v].hstack(&Matrix::from_columns(self.dims[*v], std::slice::from_ref(x)));
        }
        self.close_spans(spans)
    }

    /// Closes per-vertex spans under the arrow maps; returns column bases.
    pub fn close_spans(&self, mut spans: Vec<Matrix<F>>) -> Vec<Matrix<F>> {
        for s in spans.iter_mut() {
            *s = s.column_space();
        }
        loop {
            let mut changed = false;
            for (k, a) in self.quiver.arrows().iter().enumerate() {
                let image = &self.maps[k] * &spans[a.source];
                let combined = spans[a.target].hstack(&image).column_space();
                if combined.cols() > spans[a.target].cols() {
                    spans[a.target] = combined;
                    changed = true;
                }
            }
            if !changed {
                return spans;
            }
        }
    }

    pub fn full_bases(&self) -> Vec<Matrix<F>> {
        self.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }

    /// `rad M`: at each vertex, the span of the images of incoming arrows.
    pub fn radical_bases(&self) -> Vec<Matrix<F>> {
        (0..self.dims.len())
            .map(|v| {
                self.quiver
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == v)
                    .fold(Matrix::zeros(self.dims[v], 0), |acc, (k, _)| acc.hstack(&self.maps[k]))
                    .column_space()
            })
            .collect()
    }

    pub fn radical(&self) -> Subrep<F> {
        self.restrict(self.radical_bases())
    }

    pub fn top(&self) -> Quotient<F> {
        self.quotient(&self.radical_bases())
    }

    /// `soc M`: vectors annihilated by every outgoing arrow.
    pub fn socle_bases(&self) -> Vec<Matrix<F>> {
        (0..self.dims.len())
            .map(|v| {
                self.quiver
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .fold(Matrix::zeros(0, self.dims[v]), |acc, (k, _)| acc.vstack(&self.maps[k]))
                    .kernel()
            })
            .collect()
    }

    pub fn socle(&self) -> Subrep<F> {
        self.restrict(self.socle_bases())
    }

    /// Dimension vectors of `rad^k M` for `k = 0, 1, ...` until zero.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current = self.full_bases();
        loop {
            let dims: Vec<usize> = current.iter().map(Matrix::cols).collect();
            if dims.iter().all(|&d| d == 0) {
                return layers;
            }
            layers.push(dims);
            let next: Vec<Matrix<F>> = (0..self.dims.len())
                .map(|v| {
                    self.quiver
                        .arrows()
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| a.target == v)
                        .fold(Matrix::zeros(self.dims[v], 0), |acc, (k, a)| {
                            acc.hstack(&(&self.maps[k] * &current[a.source]))
                        })
                        .column_space()
                })
                .collect();
            current = next;
        }
    }
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F> {
    source: Representation<F>,
    target: Representation<F>,
    components: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: Representation<F>, target: Representation<F>, components: Vec<Matrix<F>>) -> Result<Self> {
        if !source.same_quiver(&target) {
            return Err(Error::MismatchedAlgebras);
        }
        if components.len() != source.dims.len() {
            return Err(Error::InvalidRepresentation("wrong number of vertex maps".into()));
        }
        for (v, c) in components.iter().enumerate() {
            if c.rows() != target.dims[v] || c.cols() != source.dims[v] {
                return Err(Error::InvalidRepresentation(format!("vertex map {v} has wrong shape")));
            }
        }
        for (k, a) in source.quiver.arrows().iter().enumerate() {
            let lhs = &target.maps[k] * &components[a.source];
            let rhs = &components[a.target] * &source.maps[k];
            if lhs != rhs {
                return Err(Error::InvalidRepresentation(format!(
                    "vertex maps do not commute with arrow {}",
                    a.name
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub(crate) fn new_unchecked(
        source: Representation<F>,
        target: Representation<F>,
        components: Vec<Matrix<F>>,
    ) -> Self {
        ModuleMap {
            source,
            target,
            components,
        }
    }

    pub fn zero(source: &Representation<F>, target: &Representation<F>) -> Self {
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(t, s))
            .collect();
        ModuleMap::new_unchecked(source.clone(), target.clone(), components)
    }

    pub fn identity(m: &Representation<F>) -> Self {
        let components = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap::new_unchecked(m.clone(), m.clone(), components)
    }

    pub fn source(&self) -> &Representation<F> {
        &self.source
    }

    pub fn target(&self) -> &Representation<F> {
        &self.target
    }

    pub fn components(&self) -> &[Matrix<F>] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Matrix<F> {
        &self.components[v]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &ModuleMap<F>) -> ModuleMap<F> {
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g * f)
            .collect();
        ModuleMap::new_unchecked(first.source.clone(), self.target.clone(), components)
    }

    pub fn linear_combination(maps: &[ModuleMap<F>], coeffs: &[F]) -> ModuleMap<F> {
        assert!(!maps.is_empty() && maps.len() == coeffs.len());
        let mut components: Vec<Matrix<F>> = maps[0]
            .components
            .iter()
            .map(|c| Matrix::zeros(c.rows(), c.cols()))
            .collect();
        for (m, c) in maps.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, x) in components.iter_mut().zip(&m.components) {
                *acc = &*acc + &x.scale(c);
            }
        }
        ModuleMap::new_unchecked(maps[0].source.clone(), maps[0].target.clone(), components)
    }

    pub fn minus_scalar(&self, lambda: &F) -> ModuleMap<F> {
        let components = self
            .components
            .iter()
            .map(|c| c - &Matrix::identity(c.rows()).scale(lambda))
            .collect();
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims == self.target.dims
            && self
                .components
                .iter()
                .all(|c| c.rows() == 0 || c.determinant() != F::zero())
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }

    /// Vertexwise trace, summed.
    pub fn trace(&self) -> F {
        self.components.iter().fold(F::zero(), |acc, c| acc + c.trace())
    }

    pub fn kernel(&self) -> Subrep<F> {
        self.source
            .restrict(self.components.iter().map(Matrix::kernel).collect())
    }

    pub fn image(&self) -> Subrep<F> {
        self.target
            .restrict(self.components.iter().map(Matrix::column_space).collect())
    }

    pub fn cokernel(&self) -> Quotient<F> {
        let images: Vec<Matrix<F>> = self.components.iter().map(Matrix::column_space).collect();
        self.target.quotient(&images)
    }

    /// Flattened coordinates (vertex by vertex, row-major).
    pub fn flatten(&self) -> Vec<F> {
        self.components
            .iter()
            .flat_map(|c| c.entries().cloned().collect::<Vec<_>>())
            .collect()
    }
}

/// A subrepresentation together with its inclusion.
#[derive(Clone, Debug)]
pub struct Subrep<F> {
    pub module: Representation<F>,
    pub inclusion: ModuleMap<F>,
}

impl<F: Field> Subrep<F> {
    /// Per-vertex bases of the subspace inside the ambient module.
    pub fn bases(&self) -> &[Matrix<F>] {
        self.inclusion.components()
    }
}

/// A quotient representation together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub module: Representation<F>,
    pub projection: ModuleMap<F>,
}

/// Basis of `Hom(M, N)` as the solution space of the intertwiner equations.
pub fn hom_basis<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Vec<ModuleMap<F>>> {
    if !m.same_quiver(n) {
        return Err(Error::MismatchedAlgebras);
    }
    let q = m.quiver.clone();
    let nv = q.n_vertices();
    let mut offsets = vec![0; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[k];
        let na = &n.maps[k];
        // (N_a f_s - f_t M_a)[r, c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![F::zero(); unknowns];
                for kk in 0..n.dims[s] {
                    let coef = na[(r, kk)].clone();
                    if !coef.is_zero() {
                        let idx = var(s, kk, c);
                        row[idx] = row[idx].clone() + coef;
                    }
                }
                for kk in 0..m.dims[t] {
                    let coef = ma[(kk, c)].clone();
                    if !coef.is_zero() {
                        let idx = var(t, r, kk);
                        row[idx] = row[idx].clone() - coef;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)
    };
    let kernel = system.kernel();
    Ok((0..kernel.cols())
        .map(|k| {
            let components = (0..nv)
                .map(|v| Matrix::from_fn(n.dims[v], m.dims[v], |r, c| kernel[(var(v, r, c), k)].clone()))
                .collect();
            ModuleMap::new_unchecked(m.clone(), n.clone(), components)
        })
        .collect())
}

pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Block-diagonal direct sum. An empty list is not allowed (no quiver).
pub fn direct_sum<F: Field>(modules: &[Representation<F>]) -> Representation<F> {
    assert!(!modules.is_empty(), "direct sum of an empty list");
    let q = modules[0].quiver.clone();
    let nv = q.n_vertices();
    let dims = (0..nv).map(|v| modules.iter().map(|m| m.dims[v]).sum()).collect();
    let maps = (0..q.arrows().len())
        .map(|k| Matrix::block_diagonal(&modules.iter().map(|m| m.maps[k].clone()).collect::<Vec<_>>()))
        .collect();
    Representation::new_unchecked(q, dims, maps)
}

/// Direct sum that tolerates an empty list by returning the zero module.
pub fn direct_sum_or_zero<F: Field>(quiver: &Arc<Quiver>, modules: &[Representation<F>]) -> Representation<F> {
    if modules.is_empty() {
        Representation::zero(quiver.clone())
    } else {
        direct_sum(modules)
    }
}

/// Sum of the images of all morphisms `N -> X`.
pub fn trace<F: Field>(n: &Representation<F>, x: &Representation<F>) -> Result<Subrep<F>> {
    let basis = hom_basis(n, x)?;
    let bases = (0..x.dims.len())
        .map(|v| {
            basis
                .iter()
                .fold(Matrix::zeros(x.dims[v], 0), |acc, f| acc.hstack(&f.components[v]))
                .column_space()
        })
        .collect();
    Ok(x.restrict(bases))
}

/// Intersection of two submodules of the same module, as per-vertex bases.
pub fn intersect_bases<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>]) -> Vec<Matrix<F>> {
    a.iter().zip(b).map(|(x, y)| span_intersection(x, y)).collect()
}

/// The trivial one-element list helper used for scalar coefficient vectors.
pub fn unit_vector<F: Field>(len: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiver;
    use crate::field::Rational;

    fn a3_ab() -> BoundQuiver {
        BoundQuiver::parse("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n").unwrap()
    }

    #[test]
    fn hom_between_projectives() {
        let alg = a3_ab();
        let p1 = alg.projective(0);
        let p2 = alg.projective(1);
        assert_eq!(hom_dim(&p2, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &p2).unwrap(), 0);
        let s1 = Representation::<Rational>::simple(alg.quiver().clone(), 0);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
    }

    #[test]
    fn kernel_cokernel_identity_and_zero() {
        let alg = a3_ab();
        let p1 = alg.projective(0);
        let id = ModuleMap::identity(&p1);
        assert!(id.kernel().module.is_zero());
        assert!(id.cokernel().module.is_zero());
        let p2 = alg.projective(1);
        let z = ModuleMap::zero(&p1, &p2);
        assert_eq!(z.kernel().module.dims(), p1.dims());
        assert_eq!(z.cokernel().module.dims(), p2.dims());
    }

    #[test]
    fn cokernel_of_p2_into_p1_is_s1() {
        let alg = a3_ab();
        let f = hom_basis(&alg.projective(1), &alg.projective(0)).unwrap().remove(0);
        assert_eq!(f.cokernel().module.dims(), &[1, 0, 0]);
        assert_eq!(f.image().module.dims(), &[0, 1, 0]);
        // rank-nullity, vertexwise
        let k = f.kernel().module;
        for v in 0..3 {
            assert_eq!(k.dims()[v] + f.image().module.dims()[v], f.source().dims()[v]);
        }
    }

    #[test]
    fn radical_top_and_socle() {
        let alg = a3_ab();
        let p1 = alg.projective(0);
        assert_eq!(p1.radical().module.dims(), &[0, 1, 0]);
        assert_eq!(p1.top().module.dims(), &[1, 0, 0]);
        assert_eq!(p1.socle().module.dims(), &[0, 1, 0]);
        let s2 = Representation::<Rational>::simple(alg.quiver().clone(), 1);
        assert!(s2.radical().module.is_zero());
        assert_eq!(p1.radical_layers(), vec![vec![1, 1, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn trace_examples() {
        let alg = a3_ab();
        let p1 = alg.projective(0);
        let p2 = alg.projective(1);
        assert_eq!(trace(&p2, &p1).unwrap().module.dims(), &[0, 1, 0]);
        assert_eq!(trace(&p1, &p1).unwrap().module.dims(), p1.dims());
        let q = alg.quiver().clone();
        let s1 = Representation::<Rational>::simple(q.clone(), 0);
        let s2 = Representation::<Rational>::simple(q, 1);
        assert!(trace(&s1, &s2).unwrap().module.is_zero());
    }

    #[test]
    fn direct_sum_of_projectives() {
        let alg = a3_ab();
        let a = direct_sum(&alg.projectives());
        assert_eq!(a.dims(), &[1, 2, 2]);
    }
}
