//! Projective presentations, g-vectors, the Auslander-Reiten translate and
//! approximations.

use crate::algebra::{BoundQuiver, ProjMap};
use crate::decompose::{basic_part, indecomposable_summands};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::matrix::{quotient_data, Matrix};
use crate::rep::{direct_sum_or_zero, hom_basis, hom_dim, ModuleMap, Representation};

/// A minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    /// Vertices of the summands of `P0`, one entry per copy.
    pub p0: Vec<usize>,
    /// Vertices of the summands of `P1`.
    pub p1: Vec<usize>,
    pub map: ProjMap,
    pub cover: ModuleMap<Rational>,
    pub syzygy: Representation<Rational>,
}

impl ProjectivePresentation {
    /// `a_i` in `P0 = ⊕ P(i)^{a_i}`.
    pub fn p0_multiplicities(&self, n: usize) -> Vec<i64> {
        count(&self.p0, n)
    }

    pub fn p1_multiplicities(&self, n: usize) -> Vec<i64> {
        count(&self.p1, n)
    }
}

fn count(vertices: &[usize], n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for &v in vertices {
        out[v] += 1;
    }
    out
}

/// Lifts of a basis of `top M` at each vertex, as `(vertex, vector)`.
fn top_generators(m: &Representation<Rational>) -> Vec<(usize, Vec<Rational>)> {
    m.radical_bases()
        .iter()
        .enumerate()
        .flat_map(|(v, rad)| {
            let (_, section) = quotient_data(rad);
            section.columns().into_iter().map(move |c| (v, c))
        })
        .collect()
}

/// The map `⊕ P(v_k) -> M` sending the idempotent of the k-th summand to
/// the k-th generator.
fn map_from_projectives(
    alg: &BoundQuiver,
    m: &Representation<Rational>,
    generators: &[(usize, Vec<Rational>)],
) -> ModuleMap<Rational> {
    let vertices: Vec<usize> = generators.iter().map(|(v, _)| *v).collect();
    let source = alg.projective_sum(&vertices);
    let components = (0..alg.n())
        .map(|j| {
            let columns: Vec<Vec<Rational>> = generators
                .iter()
                .flat_map(|(i, g)| {
                    alg.block(*i, j).iter().map(move |&p| {
                        let path = &alg.basis()[p];
                        m.path_action(path.source, &path.arrows).apply(g)
                    })
                })
                .collect();
            Matrix::from_columns(m.dims()[j], &columns)
        })
        .collect();
    ModuleMap::new_unchecked(source, m.clone(), components)
}

/// The minimal projective cover `P0 -> M`, with the summand vertices.
pub fn projective_cover(alg: &BoundQuiver, m: &Representation<Rational>) -> (Vec<usize>, ModuleMap<Rational>) {
    let generators = top_generators(m);
    let vertices = generators.iter().map(|(v, _)| *v).collect();
    (vertices, map_from_projectives(alg, m, &generators))
}

pub fn minimal_projective_presentation(alg: &BoundQuiver, m: &Representation<Rational>) -> ProjectivePresentation {
    let (p0, cover) = projective_cover(alg, m);
    let kernel = cover.kernel();
    let generators = top_generators(&kernel.module);
    let p1: Vec<usize> = generators.iter().map(|(v, _)| *v).collect();
    // offsets of the summands of P0 inside each vertex space
    let coeffs: Vec<Vec<Vec<Rational>>> = p0
        .iter()
        .enumerate()
        .map(|(t, &j)| {
            generators
                .iter()
                .map(|(i, g)| {
                    let x = kernel.inclusion.component(*i).apply(g);
                    let offset: usize = p0[..t].iter().map(|&u| alg.block(u, *i).len()).sum();
                    x[offset..offset + alg.block(j, *i).len()].to_vec()
                })
                .collect()
        })
        .collect();
    let map = ProjMap::new(alg, p1.clone(), p0.clone(), coeffs).expect("well-formed presentation");
    ProjectivePresentation {
        p0,
        p1,
        map,
        cover,
        syzygy: kernel.module,
    }
}

/// `g^M = (a_i - a'_i)_i` from the minimal presentation.
pub fn g_vector(alg: &BoundQuiver, m: &Representation<Rational>) -> Vec<i64> {
    let pres = minimal_projective_presentation(alg, m);
    let n = alg.n();
    pres.p0_multiplicities(n)
        .into_iter()
        .zip(pres.p1_multiplicities(n))
        .map(|(a, b)| a - b)
        .collect()
}

/// `τM = ker ν(P1 -> P0)`.
pub fn tau(alg: &BoundQuiver, m: &Representation<Rational>) -> Representation<Rational> {
    let pres = minimal_projective_presentation(alg, m);
    if pres.p1.is_empty() {
        return Representation::zero(alg.quiver().clone());
    }
    pres.map.nakayama(alg).kernel().module
}

/// `⟨g^M, [N]⟩`.
pub fn ar_pairing(alg: &BoundQuiver, m: &Representation<Rational>, n: &Representation<Rational>) -> i64 {
    g_vector(alg, m).iter().zip(n.dims()).map(|(g, &d)| g * d as i64).sum()
}

/// `dim Ext^1(M, N)` from `0 -> ΩM -> P0 -> M -> 0`.
pub fn ext1_dim(alg: &BoundQuiver, m: &Representation<Rational>, n: &Representation<Rational>) -> Result<usize> {
    let pres = minimal_projective_presentation(alg, m);
    let p0 = pres.cover.source();
    let value = hom_dim(&pres.syzygy, n)? as i64 - hom_dim(p0, n)? as i64 + hom_dim(m, n)? as i64;
    Ok(value as usize)
}

pub fn is_projective(alg: &BoundQuiver, m: &Representation<Rational>) -> bool {
    alg.is_projective(m)
}

/// Splits a projective module into vertices `i` of its summands `P(i)`.
pub fn projective_vertices(alg: &BoundQuiver, p: &Representation<Rational>) -> Result<Vec<usize>> {
    if !alg.is_projective(p) {
        return Err(Error::NotProjective(format!(
            "module with dimension vector {:?}",
            p.dims()
        )));
    }
    Ok(projective_cover(alg, p).0)
}

/// A minimal right `add N`-approximation `f: N' -> X`.
///
/// Returns the summands of `N'` (indecomposable, with repetition) and `f`.
pub fn minimal_right_approximation(
    n: &Representation<Rational>,
    x: &Representation<Rational>,
    seed: u64,
) -> Result<(Vec<Representation<Rational>>, ModuleMap<Rational>)> {
    let quiver = x.quiver().clone();
    let indecomposables = basic_part(&indecomposable_summands(n, seed)?, seed)?;
    let mut pieces: Vec<(Representation<Rational>, ModuleMap<Rational>)> = Vec::new();
    for y in &indecomposables {
        for f in hom_basis(y, x)? {
            pieces.push((y.clone(), f));
        }
    }
    let maps_to_x: Vec<(Representation<Rational>, ModuleMap<Rational>)> = pieces.clone();
    let mut k = pieces.len();
    while k > 0 {
        k -= 1;
        let mut trial = pieces.clone();
        trial.remove(k);
        if is_approximation(&trial, &maps_to_x)? {
            pieces = trial;
        }
    }
    let modules: Vec<Representation<Rational>> = pieces.iter().map(|(y, _)| y.clone()).collect();
    let source = direct_sum_or_zero(&quiver, &modules);
    let components = (0..x.dims().len())
        .map(|v| {
            pieces
                .iter()
                .fold(Matrix::zeros(x.dims()[v], 0), |acc, (_, f)| acc.hstack(f.component(v)))
        })
        .collect();
    Ok((modules, ModuleMap::new_unchecked(source, x.clone(), components)))
}

/// Does every listed map into `X` factor through the sum of `pieces`?
fn is_approximation(
    pieces: &[(Representation<Rational>, ModuleMap<Rational>)],
    targets: &[(Representation<Rational>, ModuleMap<Rational>)],
) -> Result<bool> {
    for (y, h) in targets {
        // all composites y -> piece -> x
        let mut composites: Vec<ModuleMap<Rational>> = Vec::new();
        for (z, f) in pieces {
            for g in hom_basis(y, z)? {
                composites.push(f.after(&g));
            }
        }
        let columns: Vec<Vec<Rational>> = composites.iter().map(ModuleMap::flatten).collect();
        let height = h.flatten().len();
        if height == 0 {
            continue;
        }
        let system = Matrix::from_columns(height, &columns);
        if system.solve(&h.flatten()).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
