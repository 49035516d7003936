//! Bound quiver algebras `kQ/I`, their path bases and indecomposable
//! projective and injective modules.
//!
//! Paths compose left to right: `a*b` traverses `a` and then `b`. Vertices
//! are 0-based internally and 1-based in the text format.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rational};
use crate::matrix::Matrix;
use crate::rep::{direct_sum_or_zero, ModuleMap, Representation};

/// Longest path length explored while looking for the nilpotency index.
pub const LENGTH_CAP: usize = 60;
/// Total number of paths the basis computation may enumerate.
pub const PATH_CAP: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n_vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n_vertices: usize, arrows: Vec<Arrow>) -> Self {
        Quiver { n_vertices, arrows }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn path_name(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            format!("e{}", path.source + 1)
        } else {
            path.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    fn compare_paths(&self, p: &Path, q: &Path) -> Ordering {
        p.len().cmp(&q.len()).then_with(|| {
            let names = |x: &Path| {
                x.arrows
                    .iter()
                    .map(|&a| self.arrows[a].name.clone())
                    .collect::<Vec<_>>()
            };
            names(p).cmp(&names(q))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if they compose.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// A rational combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }
}

/// A sparse element of the algebra in path-basis coordinates.
pub type Element = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct BoundQuiver {
    quiver: Arc<Quiver>,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    nilpotency: usize,
    normal_forms: HashMap<Path, Element>,
    blocks: HashMap<(usize, usize), Vec<usize>>,
    local_index: Vec<usize>,
}

impl PartialEq for BoundQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for BoundQuiver {}

pub fn parse_algebra(text: &str) -> Result<BoundQuiver> {
    BoundQuiver::parse(text)
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let quiver = Arc::new(quiver);
        let (nilpotency, basis, normal_forms) = compute_basis(&quiver, &relations)?;
        let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut local_index = vec![0; basis.len()];
        for (k, p) in basis.iter().enumerate() {
            let block = blocks.entry((p.source, p.target)).or_default();
            local_index[k] = block.len();
            block.push(k);
        }
        Ok(BoundQuiver {
            quiver,
            relations,
            basis,
            nilpotency,
            normal_forms,
            blocks,
            local_index,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n_vertices: Option<usize> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut pending: Vec<(usize, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: line_no, message };
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "vertices" => {
                    if n_vertices.is_some() {
                        return Err(syntax("vertices declared twice".into()));
                    }
                    let n: usize = rest
                        .parse()
                        .map_err(|_| syntax(format!("expected a vertex count, found `{rest}`")))?;
                    if n == 0 {
                        return Err(syntax("an algebra needs at least one vertex".into()));
                    }
                    n_vertices = Some(n);
                }
                "arrow" => {
                    let n = n_vertices.ok_or_else(|| syntax("arrow before vertices".into()))?;
                    let (name, ends) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax("expected `arrow <name>: <i> -> <j>`".into()))?;
                    let name = name.trim();
                    if !is_identifier(name) {
                        return Err(syntax(format!("invalid arrow name `{name}`")));
                    }
                    if arrows.iter().any(|a| a.name == name) {
                        return Err(syntax(format!("arrow `{name}` declared twice")));
                    }
                    let (s, t) = ends
                        .split_once("->")
                        .ok_or_else(|| syntax("expected `<i> -> <j>`".into()))?;
                    let vertex = |v: &str| -> Result<usize> {
                        let v: usize = v
                            .trim()
                            .parse()
                            .map_err(|_| syntax(format!("invalid vertex `{}`", v.trim())))?;
                        if v == 0 || v > n {
                            return Err(syntax(format!("vertex {v} out of range 1..{n}")));
                        }
                        Ok(v - 1)
                    };
                    arrows.push(Arrow {
                        name: name.to_string(),
                        source: vertex(s)?,
                        target: vertex(t)?,
                    });
                }
                "relation" => {
                    if n_vertices.is_none() {
                        return Err(syntax("relation before vertices".into()));
                    }
                    pending.push((line_no, rest.to_string()));
                }
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            }
        }
        let n = n_vertices.ok_or(Error::Syntax {
            line: text.lines().count().max(1),
            message: "missing `vertices` line".into(),
        })?;
        let quiver = Quiver::new(n, arrows);
        let relations = pending
            .iter()
            .map(|(line, body)| parse_relation(&quiver, *line, body))
            .collect::<Result<Vec<_>>>()?;
        BoundQuiver::new(quiver, relations.into_iter().flatten().collect())
    }

    /// Text form accepted by [`BoundQuiver::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n());
        for a in self.quiver.arrows() {
            let _ = writeln!(out, "arrow {}: {} -> {}", a.name, a.source + 1, a.target + 1);
        }
        for r in &self.relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(c, p)| {
                    let name = self.quiver.path_name(p);
                    if c.is_one() {
                        name
                    } else {
                        format!("{c} {name}")
                    }
                })
                .collect();
            let _ = writeln!(out, "relation {}", terms.join(" + "));
        }
        out
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest `L` such that every path of length `L` vanishes.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    pub fn path_name(&self, p: &Path) -> String {
        self.quiver.path_name(p)
    }

    /// Indices of basis paths from `source` to `target`.
    pub fn block(&self, source: usize, target: usize) -> &[usize] {
        self.blocks.get(&(source, target)).map_or(&[], Vec::as_slice)
    }

    /// Normal form of an arbitrary path.
    pub fn normal_form(&self, p: &Path) -> Element {
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    /// Product of two basis elements (`x` then `y`).
    pub fn product(&self, x: usize, y: usize) -> Element {
        match self.basis[x].then(&self.basis[y]) {
            Some(p) => self.normal_form(&p),
            None => Vec::new(),
        }
    }

    /// Product of sparse elements.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.product(*i, *j) {
                    let e = acc.entry(k).or_insert_with(Rational::zero);
                    *e = e.clone() + a.clone() * b.clone() * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(i + 1))
        }
    }

    /// `P(i) = e_i A`, spanned by basis paths starting at `i`.
    pub fn projective(&self, i: usize) -> Representation<Rational> {
        self.check_vertex(i).expect("vertex in range");
        let n = self.n();
        let dims: Vec<usize> = (0..n).map(|j| self.block(i, j).len()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let arrow = self.arrow_path(k);
                let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
                for (c, &p) in self.block(i, a.source).iter().enumerate() {
                    let prod = self.basis[p].then(&arrow).expect("composable");
                    for (q, coef) in self.normal_form(&prod) {
                        m[(self.local_index[q], c)] = coef;
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(self.quiver.clone(), dims, maps)
    }

    pub fn projectives(&self) -> Vec<Representation<Rational>> {
        (0..self.n()).map(|i| self.projective(i)).collect()
    }

    /// `I(i) = D(A e_i)`: at vertex `j`, the dual of the basis paths `j -> i`.
    pub fn injective(&self, i: usize) -> Representation<Rational> {
        self.check_vertex(i).expect("vertex in range");
        let n = self.n();
        let dims: Vec<usize> = (0..n).map(|j| self.block(j, i).len()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let arrow = self.arrow_path(k);
                let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
                for (r, &y) in self.block(a.target, i).iter().enumerate() {
                    let prod = arrow.then(&self.basis[y]).expect("composable");
                    for (p, coef) in self.normal_form(&prod) {
                        m[(r, self.local_index[p])] = coef;
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(self.quiver.clone(), dims, maps)
    }

    pub fn injectives(&self) -> Vec<Representation<Rational>> {
        (0..self.n()).map(|i| self.injective(i)).collect()
    }

    pub fn simple(&self, i: usize) -> Representation<Rational> {
        Representation::simple(self.quiver.clone(), i)
    }

    pub fn simples(&self) -> Vec<Representation<Rational>> {
        (0..self.n()).map(|i| self.simple(i)).collect()
    }

    /// The regular module `A_A`.
    pub fn regular(&self) -> Representation<Rational> {
        direct_sum_or_zero(&self.quiver, &self.projectives())
    }

    pub fn projective_sum(&self, vertices: &[usize]) -> Representation<Rational> {
        let parts: Vec<_> = vertices.iter().map(|&i| self.projective(i)).collect();
        direct_sum_or_zero(&self.quiver, &parts)
    }

    pub fn injective_sum(&self, vertices: &[usize]) -> Representation<Rational> {
        let parts: Vec<_> = vertices.iter().map(|&i| self.injective(i)).collect();
        direct_sum_or_zero(&self.quiver, &parts)
    }

    fn arrow_path(&self, k: usize) -> Path {
        let a = &self.quiver.arrows()[k];
        Path {
            source: a.source,
            target: a.target,
            arrows: vec![k],
        }
    }

    /// Builds a module and checks it against the relations.
    pub fn module(&self, dims: Vec<usize>, maps: Vec<Matrix<Rational>>) -> Result<Representation<Rational>> {
        let m = Representation::new(self.quiver.clone(), dims, maps)?;
        if !self.satisfies_relations(&m) {
            return Err(Error::InvalidRepresentation("relations are not satisfied".into()));
        }
        Ok(m)
    }

    pub fn satisfies_relations<F: Field>(&self, m: &Representation<F>) -> bool {
        self.relations.iter().all(|r| {
            let Some(terms) = r
                .terms
                .iter()
                .map(|(c, p)| Some(m.path_action(p.source, &p.arrows).scale(&F::from_rational(c)?)))
                .collect::<Option<Vec<_>>>()
            else {
                return false;
            };
            let zero = Matrix::zeros(m.dims()[r.target()], m.dims()[r.source()]);
            terms.iter().fold(zero, |acc, t| &acc + t).is_zero()
        })
    }

    /// Is `m` isomorphic to a direct sum of indecomposable projectives?
    /// Decided by comparing `dim M` with the dimension of its projective cover.
    pub fn is_projective<F: Field>(&self, m: &Representation<F>) -> bool {
        let top = m.top().module;
        let mut cover = vec![0usize; self.n()];
        for (i, &mult) in top.dims().iter().enumerate() {
            for (j, c) in cover.iter_mut().enumerate() {
                *c += mult * self.block(i, j).len();
            }
        }
        cover == m.dims()
    }
}

/// A morphism `⊕_s P(i_s) -> ⊕_t P(j_t)` in path coordinates:
/// `coeffs[t][s]` lists the coordinates of an element of `e_{j_t} A e_{i_s}`
/// over the basis paths `j_t -> i_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub coeffs: Vec<Vec<Vec<Rational>>>,
}

impl ProjMap {
    pub fn new(
        algebra: &BoundQuiver,
        source: Vec<usize>,
        target: Vec<usize>,
        coeffs: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        if coeffs.len() != target.len() {
            return Err(Error::NotProjectiveMap(format!(
                "{} coefficient rows for {} target summands",
                coeffs.len(),
                target.len()
            )));
        }
        for (t, row) in coeffs.iter().enumerate() {
            if row.len() != source.len() {
                return Err(Error::NotProjectiveMap(format!("row {t} has the wrong length")));
            }
            for (s, x) in row.iter().enumerate() {
                let (j, i) = (target[t], source[s]);
                if j >= algebra.n() || i >= algebra.n() {
                    return Err(Error::VertexOutOfRange(j.max(i) + 1));
                }
                if x.len() != algebra.block(j, i).len() {
                    return Err(Error::NotProjectiveMap(format!(
                        "entry ({t},{s}) has {} coordinates, expected {}",
                        x.len(),
                        algebra.block(j, i).len()
                    )));
                }
            }
        }
        Ok(ProjMap { source, target, coeffs })
    }

    pub fn identity(algebra: &BoundQuiver, vertices: &[usize]) -> Self {
        let coeffs = vertices
            .iter()
            .map(|&j| {
                vertices
                    .iter()
                    .map(|&i| {
                        algebra
                            .block(j, i)
                            .iter()
                            .map(|&p| {
                                if i == j && algebra.basis[p].is_empty() {
                                    Rational::one()
                                } else {
                                    Rational::zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Vec<Rational>>>>();
        // identity only on the diagonal summands
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(t, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(s, x)| if s == t { x } else { vec![Rational::zero(); x.len()] })
                    .collect()
            })
            .collect();
        ProjMap {
            source: vertices.to_vec(),
            target: vertices.to_vec(),
            coeffs,
        }
    }

    pub fn zero(algebra: &BoundQuiver, source: &[usize], target: &[usize]) -> Self {
        let coeffs = target
            .iter()
            .map(|&j| {
                source
                    .iter()
                    .map(|&i| vec![Rational::zero(); algebra.block(j, i).len()])
                    .collect()
            })
            .collect();
        ProjMap {
            source: source.to_vec(),
            target: target.to_vec(),
            coeffs,
        }
    }

    fn element(&self, algebra: &BoundQuiver, t: usize, s: usize) -> Element {
        algebra
            .block(self.target[t], self.source[s])
            .iter()
            .zip(&self.coeffs[t][s])
            .filter(|(_, c)| !c.is_zero())
            .map(|(&p, c)| (p, c.clone()))
            .collect()
    }

    /// The module map between the direct sums of projectives.
    pub fn to_module_map(&self, algebra: &BoundQuiver) -> ModuleMap<Rational> {
        let src = algebra.projective_sum(&self.source);
        let tgt = algebra.projective_sum(&self.target);
        let components = (0..algebra.n())
            .map(|k| {
                let row_offsets = offsets(self.target.iter().map(|&j| algebra.block(j, k).len()));
                let col_offsets = offsets(self.source.iter().map(|&i| algebra.block(i, k).len()));
                let mut m = Matrix::zeros(tgt.dims()[k], src.dims()[k]);
                for s in 0..self.source.len() {
                    for (c, &p) in algebra.block(self.source[s], k).iter().enumerate() {
                        for t in 0..self.target.len() {
                            let x = self.element(algebra, t, s);
                            for (q, coef) in algebra.multiply(&x, &vec![(p, Rational::one())]) {
                                m[(row_offsets[t] + algebra.local_index[q], col_offsets[s] + c)] = coef;
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(src, tgt, components)
    }

    /// The Nakayama functor `ν = D Hom(-, A)` applied to this map, giving
    /// `⊕_s I(i_s) -> ⊕_t I(j_t)`.
    pub fn nakayama(&self, algebra: &BoundQuiver) -> ModuleMap<Rational> {
        let src = algebra.injective_sum(&self.source);
        let tgt = algebra.injective_sum(&self.target);
        let components = (0..algebra.n())
            .map(|k| {
                let row_offsets = offsets(self.target.iter().map(|&j| algebra.block(k, j).len()));
                let col_offsets = offsets(self.source.iter().map(|&i| algebra.block(k, i).len()));
                let mut m = Matrix::zeros(tgt.dims()[k], src.dims()[k]);
                for t in 0..self.target.len() {
                    for (r, &y) in algebra.block(k, self.target[t]).iter().enumerate() {
                        for s in 0..self.source.len() {
                            let x = self.element(algebra, t, s);
                            for (p, coef) in algebra.multiply(&vec![(y, Rational::one())], &x) {
                                m[(row_offsets[t] + r, col_offsets[s] + algebra.local_index[p])] = coef;
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(src, tgt, components)
    }
}

pub fn nakayama_on_map(algebra: &BoundQuiver, f: &ProjMap) -> ModuleMap<Rational> {
    f.nakayama(algebra)
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses the body of a `relation` line. Returns `None` when every
/// coefficient cancels.
fn parse_relation(quiver: &Quiver, line: usize, body: &str) -> Result<Option<Relation>> {
    let syntax = |message: String| Error::Syntax { line, message };
    let mut terms: BTreeMap<Path, Rational> = BTreeMap::new();
    let mut sign = Rational::one();
    let mut coef: Option<Rational> = None;
    let mut expect_term = true;
    for token in body.split_whitespace() {
        match token {
            "+" | "-" => {
                if expect_term && coef.is_some() {
                    return Err(syntax(format!("unexpected `{token}`")));
                }
                if !expect_term {
                    expect_term = true;
                    sign = Rational::one();
                }
                if token == "-" {
                    sign = -sign;
                }
            }
            _ if !expect_term => return Err(syntax(format!("expected `+` or `-` before `{token}`"))),
            _ => {
                if let Some(c) = parse_rational(token) {
                    if coef.is_some() {
                        return Err(syntax(format!("two coefficients in a row at `{token}`")));
                    }
                    coef = Some(c);
                    continue;
                }
                let path = parse_path(quiver, token).map_err(syntax)?;
                let c = sign.clone() * coef.take().unwrap_or_else(Rational::one);
                let e = terms.entry(path).or_insert_with(Rational::zero);
                *e = e.clone() + c;
                expect_term = false;
            }
        }
    }
    if expect_term {
        return Err(syntax("relation ends without a path".into()));
    }
    let terms: Vec<(Rational, Path)> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (c, p))
        .collect();
    let Some(first) = terms.first() else {
        return Ok(None);
    };
    let (s, t) = (first.1.source, first.1.target);
    if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
        return Err(Error::NonParallelRelation { line });
    }
    if terms.iter().any(|(_, p)| p.len() < 2) {
        return Err(Error::NotAdmissible(format!(
            "line {line}: relation terms must have length at least two"
        )));
    }
    Ok(Some(Relation { terms }))
}

fn parse_path(quiver: &Quiver, token: &str) -> std::result::Result<Path, String> {
    let mut arrows = Vec::new();
    for name in token.split('*') {
        let k = quiver
            .arrow_index(name)
            .ok_or_else(|| format!("unknown arrow `{name}`"))?;
        if let Some(&prev) = arrows.last() {
            let prev: usize = prev;
            if quiver.arrows[prev].target != quiver.arrows[k].source {
                return Err(format!("arrows in `{token}` do not compose"));
            }
        }
        arrows.push(k);
    }
    let source = quiver.arrows[arrows[0]].source;
    let target = quiver.arrows[*arrows.last().expect("nonempty")].target;
    Ok(Path { source, target, arrows })
}

/// Paths grouped by length, up to `max_len`.
fn paths_by_length(quiver: &Quiver, max_len: usize) -> Result<Vec<Vec<Path>>> {
    let mut layers = vec![(0..quiver.n_vertices()).map(Path::trivial).collect::<Vec<_>>()];
    let mut total = layers[0].len();
    for _ in 0..max_len {
        let next: Vec<Path> = layers
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(|p| {
                quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(move |(_, a)| a.source == p.target)
                    .map(move |(k, a)| {
                        let mut arrows = p.arrows.clone();
                        arrows.push(k);
                        Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        }
                    })
            })
            .collect();
        total += next.len();
        if total > PATH_CAP {
            return Err(Error::NotAdmissible(format!(
                "more than {PATH_CAP} paths before the relations close up"
            )));
        }
        layers.push(next);
    }
    Ok(layers)
}

/// The elements `u r v` of the ideal with `len(u) + len(v) <= extra(r)`.
fn ideal_generators(
    relations: &[Relation],
    layers: &[Vec<Path>],
    budget: impl Fn(&Relation) -> Option<usize>,
) -> Vec<Vec<(Rational, Path)>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for r in relations {
        let Some(extra) = budget(r) else { continue };
        for lu in 0..=extra {
            let us = layers[lu].iter().filter(|u| u.target == r.source());
            for u in us {
                for layer in &layers[..=extra - lu] {
                    for v in layer.iter().filter(|v| v.source == r.target()) {
                        let element: Vec<(Rational, Path)> = r
                            .terms
                            .iter()
                            .map(|(c, p)| {
                                let full = u.then(p).and_then(|x| x.then(v)).expect("composable");
                                (c.clone(), full)
                            })
                            .collect();
                        if seen.insert(element.clone()) {
                            out.push(element);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Finds a length `L` beyond which every path vanishes, the basis of
/// `kQ/I` and normal forms of every path shorter than `L`.
///
/// Membership of all length-`L` paths in the ideal is tested exactly, with
/// untruncated ideal elements of bounded length; the bound grows
/// geometrically up to [`LENGTH_CAP`]. Normal forms come from the reduced
/// echelon form of the truncated ideal, with paths ordered so that each
/// pivot is the largest path of its row.
fn compute_basis(quiver: &Quiver, relations: &[Relation]) -> Result<(usize, Vec<Path>, HashMap<Path, Element>)> {
    let mut nilpotency = None;
    let mut bound = 1;
    'search: loop {
        let layers = paths_by_length(quiver, bound)?;
        let generators = ideal_generators(relations, &layers, |r| {
            let longest = r.terms.iter().map(|t| t.1.len()).max().unwrap_or(0);
            bound.checked_sub(longest)
        });
        let vanishing = vanishing_paths(&layers, bound, &generators);
        if let Some(l) = (1..=bound).find(|&l| layers[l].iter().all(|p| vanishing.contains(p))) {
            nilpotency = Some(l);
            break 'search;
        }
        if bound == LENGTH_CAP {
            break;
        }
        bound = (bound + bound.div_ceil(2)).min(LENGTH_CAP);
    }
    let nilpotency =
        nilpotency.ok_or_else(|| Error::NotAdmissible(format!("paths do not vanish below length {LENGTH_CAP}")))?;
    let layers = paths_by_length(quiver, nilpotency - 1)?;
    let min_len = |r: &Relation| r.terms.iter().map(|t| t.1.len()).min().unwrap_or(0);
    let generators = ideal_generators(relations, &layers, |r| (nilpotency - 1).checked_sub(min_len(r)));

    let mut by_block: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in layers.iter().flatten() {
        by_block.entry((p.source, p.target)).or_default().push(p.clone());
    }
    let mut basis = Vec::new();
    let mut reductions: Vec<(Path, Vec<(Path, Rational)>)> = Vec::new();
    for ((s, t), mut paths) in by_block {
        // largest first
        paths.sort_by(|a, b| quiver.compare_paths(b, a));
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let rows: Vec<Vec<Rational>> = generators
            .iter()
            .filter(|g| g[0].1.source == s && g[0].1.target == t)
            .map(|g| {
                let mut row = vec![Rational::zero(); paths.len()];
                for (c, p) in g {
                    if let Some(&k) = index.get(p) {
                        row[k] = row[k].clone() + c.clone();
                    }
                }
                row
            })
            .collect();
        let (echelon, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, paths.len()), Vec::new())
        } else {
            Matrix::from_rows(rows).rref()
        };
        let free: Vec<usize> = (0..paths.len()).filter(|c| !pivots.contains(c)).collect();
        let mut block_basis: Vec<Path> = free.iter().map(|&c| paths[c].clone()).collect();
        block_basis.sort_by(|a, b| quiver.compare_paths(a, b));
        for (row, &p) in pivots.iter().enumerate() {
            let expr = free
                .iter()
                .filter(|&&c| !echelon[(row, c)].is_zero())
                .map(|&c| (paths[c].clone(), -echelon[(row, c)].clone()))
                .collect();
            reductions.push((paths[p].clone(), expr));
        }
        basis.extend(block_basis);
    }
    let position: HashMap<Path, usize> = basis.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
    let mut normal_forms: HashMap<Path, Element> = basis
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), vec![(k, Rational::one())]))
        .collect();
    for (p, expr) in reductions {
        let mut e: Element = expr.into_iter().map(|(q, c)| (position[&q], c)).collect();
        e.sort_by_key(|(k, _)| *k);
        normal_forms.insert(p, e);
    }
    Ok((nilpotency, basis, normal_forms))
}

/// Paths of length at most `bound` that lie in the span of the generators.
fn vanishing_paths(layers: &[Vec<Path>], bound: usize, generators: &[Vec<(Rational, Path)>]) -> HashSet<Path> {
    let mut by_block: BTreeMap<(usize, usize), Vec<&Path>> = BTreeMap::new();
    for p in layers[..=bound].iter().flatten() {
        by_block.entry((p.source, p.target)).or_default().push(p);
    }
    let mut out = HashSet::new();
    for ((s, t), cols) in by_block {
        let index: HashMap<&Path, usize> = cols.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let rows: Vec<Vec<Rational>> = generators
            .iter()
            .filter(|g| g[0].1.source == s && g[0].1.target == t)
            .map(|g| {
                let mut row = vec![Rational::zero(); cols.len()];
                for (c, p) in g {
                    let k = index[p];
                    row[k] = row[k].clone() + c.clone();
                }
                row
            })
            .collect();
        if rows.is_empty() {
            continue;
        }
        // e_p is in the row space iff some row of the reduced form equals e_p
        let (echelon, pivots) = Matrix::from_rows(rows).rref();
        for (r, &p) in pivots.iter().enumerate() {
            if (0..cols.len()).all(|c| c == p || echelon[(r, c)].is_zero()) {
                out.insert(cols[p].clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::hom_basis;

    const A3_AB: &str = "vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n";
    const LOOP: &str = "vertices 2\narrow a: 1 -> 2\narrow b: 2 -> 2\nrelation a*b\nrelation b*b\n";
    const CYCLE: &str = "vertices 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b\nrelation b*a\n";

    #[test]
    fn path_basis_examples() {
        let alg = BoundQuiver::parse(A3_AB).unwrap();
        assert_eq!(alg.dim(), 5);
        let names: Vec<String> = alg.basis().iter().map(|p| alg.path_name(p)).collect();
        for n in ["e1", "e2", "e3", "a", "b"] {
            assert!(names.contains(&n.to_string()));
        }
        assert_eq!(BoundQuiver::parse("vertices 1").unwrap().dim(), 1);
        assert_eq!(BoundQuiver::parse(LOOP).unwrap().dim(), 4);
        assert_eq!(BoundQuiver::parse(CYCLE).unwrap().dim(), 4);
        assert_eq!(
            BoundQuiver::parse("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3")
                .unwrap()
                .dim(),
            6
        );
    }

    #[test]
    fn commutativity_relation() {
        let text =
            "vertices 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation a*b - c*d\n";
        let alg = BoundQuiver::parse(text).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        let p1 = alg.projective(0);
        assert_eq!(p1.dims(), &[1, 1, 1, 1]);
        assert!(alg.satisfies_relations(&p1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            BoundQuiver::parse("vertices 2\narrow a: 1 -> 3"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            BoundQuiver::parse("vertices 3\narrow a: 1 -> 2\narrow b: 1 -> 3\nrelation a - b"),
            Err(Error::NonParallelRelation { line: 4 })
        ));
        assert!(matches!(
            BoundQuiver::parse("vertices 1\narrow x: 1 -> 1"),
            Err(Error::NotAdmissible(_))
        ));
        // b^2 = b^3 gives a finite algebra but the ideal is not admissible
        assert!(matches!(
            BoundQuiver::parse("vertices 1\narrow b: 1 -> 1\nrelation b*b - b*b*b"),
            Err(Error::NotAdmissible(_))
        ));
        assert!(matches!(
            BoundQuiver::parse("arrows 2"),
            Err(Error::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn projectives_and_injectives() {
        let alg = BoundQuiver::parse(A3_AB).unwrap();
        assert_eq!(alg.projective(0).dims(), &[1, 1, 0]);
        assert_eq!(alg.projective(1).dims(), &[0, 1, 1]);
        assert_eq!(alg.projective(2).dims(), &[0, 0, 1]);
        assert_eq!(alg.injective(1).dims(), &[1, 1, 0]);
        assert_eq!(alg.injective(0).dims(), &[1, 0, 0]);
        for i in 0..3 {
            assert!(alg.satisfies_relations(&alg.projective(i)));
            assert!(alg.satisfies_relations(&alg.injective(i)));
            assert_eq!(alg.projective(i).top().module.dims(), alg.simple(i).dims());
            assert_eq!(alg.injective(i).socle().module.dims(), alg.simple(i).dims());
        }
        let lp = BoundQuiver::parse(LOOP).unwrap();
        assert_eq!(lp.projective(1).dims(), &[0, 2]);
    }

    #[test]
    fn nakayama_of_alpha() {
        let alg = BoundQuiver::parse(A3_AB).unwrap();
        let f = ProjMap::new(&alg, vec![1], vec![0], vec![vec![vec![Rational::one()]]]).unwrap();
        let as_map = f.to_module_map(&alg);
        assert!(ModuleMap::new(
            as_map.source().clone(),
            as_map.target().clone(),
            as_map.components().to_vec()
        )
        .is_ok());
        let nu = f.nakayama(&alg);
        assert!(ModuleMap::new(nu.source().clone(), nu.target().clone(), nu.components().to_vec()).is_ok());
        assert_eq!(nu.source().dims(), &[1, 1, 0]);
        assert_eq!(nu.target().dims(), &[1, 0, 0]);
        assert_eq!(nu.cokernel().module.total_dim(), 0);
        assert_eq!(hom_basis(nu.source(), nu.target()).unwrap().len(), 1);

        let id = ProjMap::identity(&alg, &[0, 1]);
        assert_eq!(id.nakayama(&alg), ModuleMap::identity(&alg.injective_sum(&[0, 1])));
        let z = ProjMap::zero(&alg, &[1], &[0]);
        assert!(z.nakayama(&alg).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let text = "vertices 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation 2 a*b - 1/3 c*d\n";
        let alg = BoundQuiver::parse(text).unwrap();
        let again = BoundQuiver::parse(&alg.to_text()).unwrap();
        assert_eq!(alg, again);
        assert_eq!(alg.basis(), again.basis());
    }
}
