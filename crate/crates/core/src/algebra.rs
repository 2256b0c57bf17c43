//! Finite-dimensional algebras presented by quivers with relations.
//!
//! Composition is right-to-left throughout: for arrows a: 1 -> 2 and
//! b: 2 -> 3 the composite path 1 -> 3 is the product b*a, and a path
//! p: i -> j lies in e_j A e_i. Path data is stored in traversal order
//! (the order the arrows are walked), so the product b*a has arrow list
//! [a, b]. Labels render traversal order joined with '.', matching the
//! file format: "a.b" is the walk a-then-b, i.e. the product b*a.
//!
//! Quotients by admissible relations are computed degree by degree, which
//! is exact when every relation is length-homogeneous; mixed-length
//! relations are rejected up front.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{LinSolver, Matrix};

pub const MAX_PATH_LEN: usize = 64;
pub const MAX_DIM: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver { vertex_names, arrows };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertex_names.len();
        if n == 0 {
            return Err(Error::Validation("quiver needs at least one vertex".into()));
        }
        for (i, v) in self.vertex_names.iter().enumerate() {
            if self.vertex_names[..i].contains(v) {
                return Err(Error::Validation(format!("duplicate vertex name {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Validation(format!("arrow {:?} endpoint out of range", a.name)));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Validation(format!("duplicate arrow name {:?}", a.name)));
            }
            if self.vertex_names.contains(&a.name) {
                return Err(Error::Validation(format!("arrow name {:?} clashes with a vertex", a.name)));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the vertex graph.
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            if a.source == a.target {
                return false;
            }
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        seen == n
    }

    /// Number of paths (including trivial ones); None when infinite.
    pub fn path_count(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        // count[v] = number of paths starting at v; process in reverse topological order.
        let n = self.num_vertices();
        let mut count = vec![1usize; n];
        // Repeated relaxation is fine at this scale.
        for _ in 0..n {
            for v in 0..n {
                let mut c = 1;
                for a in &self.arrows {
                    if a.source == v {
                        c += count[a.target];
                    }
                }
                count[v] = c;
            }
        }
        Some(count.iter().sum())
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_names: self.vertex_names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// Arrows in traversal order: `arrows[0]` is walked first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        if self.source >= q.num_vertices() {
            return Err(Error::Validation("path source out of range".into()));
        }
        let mut at = self.source;
        for &ai in &self.arrows {
            let a = q.arrows.get(ai).ok_or_else(|| Error::Validation("bad arrow index".into()))?;
            if a.source != at {
                return Err(Error::Validation(format!(
                    "path not composable at arrow {:?} (expected source {}, found {})",
                    a.name,
                    q.vertex_names[at],
                    q.vertex_names[a.source]
                )));
            }
            at = a.target;
        }
        Ok(())
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_names[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.clone()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn reversed(&self, q: &Quiver) -> Path {
        Path { source: self.target(q), arrows: self.arrows.iter().rev().copied().collect() }
    }
}

/// Linear combination of parallel paths, all of the same positive length.
#[derive(Debug, Clone)]
pub struct Relation<K: Field> {
    pub terms: Vec<(K::Elem, Path)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

#[derive(Debug, Clone)]
pub struct Presentation<K: Field> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<K>>,
    /// Basis index of each arrow's class (arrows always survive: relations
    /// have length >= 2).
    pub arrow_basis: Vec<usize>,
    /// Normal-form path representing each basis element, aligned with the
    /// algebra basis.
    pub basis_paths: Vec<Path>,
}

pub type SparseVec<K> = Vec<(usize, <K as Field>::Elem)>;

/// A finite-dimensional algebra with a fixed k-basis of source/target
/// homogeneous elements, a full multiplication table, distinguished vertex
/// idempotents summing to 1, and a stored radical basis.
#[derive(Debug, Clone)]
pub struct FDAlgebra<K: Field> {
    field: K,
    vertex_names: Vec<String>,
    basis: Vec<BasisElem>,
    idempotent: Vec<usize>,
    mult: Vec<Vec<SparseVec<K>>>,
    radical: Vec<SparseVec<K>>,
    presentation: Option<Presentation<K>>,
}

impl<K: Field> PartialEq for FDAlgebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vertex_names == other.vertex_names
            && self.basis == other.basis
            && self.idempotent == other.idempotent
            && self.mult == other.mult
    }
}

impl<K: Field> FDAlgebra<K> {
    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotent[v]
    }

    pub fn is_idempotent_index(&self, b: usize) -> bool {
        self.idempotent.contains(&b)
    }

    pub fn presentation(&self) -> Option<&Presentation<K>> {
        self.presentation.as_ref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<K> {
        &self.mult[i][j]
    }

    /// Product of dense coefficient vectors (x * y, y acting first).
    pub fn mul_elems(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (b, m) in &self.mult[i][j] {
                    out[*b] = f.add(&out[*b], &f.mul(&c, m));
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<K::Elem> {
        let mut u = vec![self.field.zero(); self.dim()];
        for &e in &self.idempotent {
            u[e] = self.field.one();
        }
        u
    }

    pub fn basis_vector(&self, b: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[b] = self.field.one();
        v
    }

    pub fn radical_basis(&self) -> &[SparseVec<K>] {
        &self.radical
    }

    pub fn radical_dense(&self) -> Vec<Vec<K::Elem>> {
        self.radical
            .iter()
            .map(|sv| {
                let mut v = vec![self.field.zero(); self.dim()];
                for (i, c) in sv {
                    v[*i] = c.clone();
                }
                v
            })
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim() {
            for j in 0..i {
                if self.mult[i][j] != self.mult[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Sanity checks on the tables: unit laws, source/target compatibility,
    /// associativity on basis triples, and that the radical is a nilpotent ideal.
    pub fn validate_tables(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        for v in 0..self.num_vertices() {
            let e = self.idempotent[v];
            if self.basis[e].source != v || self.basis[e].target != v {
                return Err(Error::Validation(format!("idempotent {v} not vertex homogeneous")));
            }
        }
        // e_target(b) * b = b = b * e_source(b); orthogonal idempotents.
        for b in 0..n {
            let eb = self.basis_vector(b);
            let et = self.basis_vector(self.idempotent[self.basis[b].target]);
            let es = self.basis_vector(self.idempotent[self.basis[b].source]);
            if self.mul_elems(&et, &eb) != eb || self.mul_elems(&eb, &es) != eb {
                return Err(Error::Validation(format!(
                    "unit law fails for basis element {}",
                    self.basis[b].label
                )));
            }
        }
        // Products respect gradings: b_i * b_j is zero unless source(i) = target(j),
        // and lands in e_{target(i)} A e_{source(j)}.
        for i in 0..n {
            for j in 0..n {
                let p = &self.mult[i][j];
                if self.basis[i].source != self.basis[j].target {
                    if !p.is_empty() {
                        return Err(Error::Validation("nonzero product of non-composable elements".into()));
                    }
                    continue;
                }
                for (b, c) in p {
                    if f.is_zero(c) {
                        continue;
                    }
                    if self.basis[*b].target != self.basis[i].target
                        || self.basis[*b].source != self.basis[j].source
                    {
                        return Err(Error::Validation("product violates source/target grading".into()));
                    }
                }
            }
        }
        // Associativity on basis triples.
        for i in 0..n {
            let bi = self.basis_vector(i);
            for j in 0..n {
                let bj = self.basis_vector(j);
                let ij = self.mul_elems(&bi, &bj);
                for l in 0..n {
                    let bl = self.basis_vector(l);
                    let jl = self.mul_elems(&bj, &bl);
                    if self.mul_elems(&ij, &bl) != self.mul_elems(&bi, &jl) {
                        return Err(Error::Validation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[l].label
                        )));
                    }
                }
            }
        }
        self.validate_radical()?;
        Ok(())
    }

    fn validate_radical(&self) -> Result<()> {
        let f = &self.field;
        let rad = self.radical_dense();
        if rad.is_empty() {
            return Ok(());
        }
        let n = self.dim();
        let rad_mat = Matrix::from_fn(f.clone(), n, rad.len(), |i, j| rad[j][i].clone());
        let solver = LinSolver::new(&rad_mat);
        // Two-sided ideal: b * r and r * b stay inside the span.
        for b in 0..n {
            let bv = self.basis_vector(b);
            for r in &rad {
                for prod in [self.mul_elems(&bv, r), self.mul_elems(r, &bv)] {
                    if solver.express(&prod).is_none() {
                        return Err(Error::Validation("radical is not an ideal".into()));
                    }
                }
            }
        }
        // Nilpotency: powers of the span shrink to zero.
        let mut current = rad.clone();
        for _ in 0..=n {
            if current.is_empty() {
                return Ok(());
            }
            let mut products = Vec::new();
            for x in &current {
                for r in &rad {
                    products.push(self.mul_elems(x, r));
                }
            }
            let mat = Matrix::from_fn(f.clone(), n, products.len(), |i, j| products[j][i].clone());
            let img = mat.image_basis();
            current = (0..img.cols()).map(|j| img.col(j)).collect();
        }
        Err(Error::Validation("radical is not nilpotent".into()))
    }

    /// Direct table construction (used for endomorphism algebras).
    pub fn from_tables(
        field: K,
        vertex_names: Vec<String>,
        basis: Vec<BasisElem>,
        idempotent: Vec<usize>,
        mult: Vec<Vec<SparseVec<K>>>,
        radical: Vec<SparseVec<K>>,
    ) -> Result<Self> {
        let a = FDAlgebra { field, vertex_names, basis, idempotent, mult, radical, presentation: None };
        a.validate_tables()?;
        Ok(a)
    }

    /// The opposite algebra: same basis labels with sources and targets
    /// swapped, multiplication reversed. Applying it twice reproduces the
    /// original tables exactly.
    pub fn opposite(&self) -> FDAlgebra<K> {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElem {
                label: b.label.clone(),
                source: b.target,
                target: b.source,
                degree: b.degree,
            })
            .collect();
        let n = self.dim();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        let presentation = self.presentation.as_ref().map(|p| {
            let quiver = p.quiver.reversed();
            let relations = p
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, path)| (c.clone(), path.reversed(&p.quiver)))
                        .collect(),
                })
                .collect();
            let basis_paths = p.basis_paths.iter().map(|path| path.reversed(&p.quiver)).collect();
            Presentation { quiver, relations, arrow_basis: p.arrow_basis.clone(), basis_paths }
        });
        FDAlgebra {
            field: self.field.clone(),
            vertex_names: self.vertex_names.clone(),
            basis,
            idempotent: self.idempotent.clone(),
            mult,
            radical: self.radical.clone(),
            presentation,
        }
    }
}

/// Per-degree state of the graded quotient construction.
struct Degree<K: Field> {
    /// Normal-form paths spanning this degree of the quotient.
    normals: Vec<Path>,
    /// Candidate (normal index at previous degree, arrow) -> candidate column.
    cand_index: HashMap<(usize, usize), usize>,
    /// Reduction of candidates to normal coordinates: normals x candidates.
    rho: Matrix<K>,
}

struct GradedBuilder<K: Field> {
    field: K,
    degrees: Vec<Degree<K>>,
}

impl<K: Field> GradedBuilder<K> {
    /// Push a coefficient vector over `normals[d]` through one arrow,
    /// landing in candidate coordinates at degree d+1. Returns None when no
    /// candidate survives (all components vanish or nothing composes).
    fn arrow_to_candidates(&self, d: usize, vec: &[K::Elem], arrow: usize) -> Vec<K::Elem> {
        let f = &self.field;
        let next = &self.degrees[d + 1];
        let mut out = vec![f.zero(); next.cand_index.len()];
        for (n_idx, c) in vec.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            if let Some(&col) = next.cand_index.get(&(n_idx, arrow)) {
                out[col] = f.add(&out[col], c);
            }
        }
        out
    }

    /// Full reduction through one arrow: normal coords at d -> normal coords at d+1.
    fn arrow_reduce(&self, d: usize, vec: &[K::Elem], arrow: usize) -> Vec<K::Elem> {
        if d + 1 >= self.degrees.len() {
            return vec![];
        }
        let cand = self.arrow_to_candidates(d, vec, arrow);
        self.degrees[d + 1].rho.apply(&cand)
    }

    /// Reduce an arbitrary path to normal coordinates at its length.
    fn reduce_path(&self, p: &Path) -> (usize, Vec<K::Elem>) {
        let mut d = 0;
        let e_idx = self.degrees[0].normals.iter().position(|n| n.source == p.source).unwrap();
        let mut vec = vec![self.field.zero(); self.degrees[0].normals.len()];
        vec[e_idx] = self.field.one();
        for &a in &p.arrows {
            if d + 1 >= self.degrees.len() || vec.iter().all(|c| self.field.is_zero(c)) {
                return (p.len(), vec![]);
            }
            vec = self.arrow_reduce(d, &vec, a);
            d += 1;
        }
        (d, vec)
    }
}

/// Quotient of a path algebra by admissible length-homogeneous relations.
pub fn build_path_algebra<K: Field>(
    field: K,
    quiver: Quiver,
    relations: Vec<Relation<K>>,
) -> Result<FDAlgebra<K>> {
    quiver.validate()?;
    // Validate and normalize relations.
    let mut cleaned: Vec<Relation<K>> = Vec::new();
    for (ri, r) in relations.iter().enumerate() {
        let terms: Vec<(K::Elem, Path)> =
            r.terms.iter().filter(|(c, _)| !field.is_zero(c)).cloned().collect();
        if terms.is_empty() {
            continue;
        }
        let len = terms[0].1.len();
        let src = terms[0].1.source;
        let tgt = terms[0].1.target(&quiver);
        for (_, p) in &terms {
            p.validate(&quiver)?;
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "relation {} has a term of length {} (< 2)",
                    ri + 1,
                    p.len()
                )));
            }
            if p.len() != len {
                return Err(Error::MalformedRelation(format!(
                    "relation {} mixes path lengths {} and {}; only length-homogeneous relations are supported",
                    ri + 1,
                    len,
                    p.len()
                )));
            }
            if p.source != src || p.target(&quiver) != tgt {
                return Err(Error::MalformedRelation(format!(
                    "relation {} mixes terms with different sources or targets",
                    ri + 1
                )));
            }
        }
        cleaned.push(Relation { terms });
    }

    let nv = quiver.num_vertices();
    let mut builder = GradedBuilder { field: field.clone(), degrees: Vec::new() };
    builder.degrees.push(Degree {
        normals: (0..nv).map(Path::trivial).collect(),
        cand_index: HashMap::new(),
        rho: Matrix::identity(field.clone(), nv),
    });

    let mut total_dim = nv;
    for deg in 1..=MAX_PATH_LEN + 1 {
        let prev = &builder.degrees[deg - 1];
        // Candidates: previous normal path extended by one arrow, in
        // (normal, arrow) order.
        let mut cand_paths: Vec<Path> = Vec::new();
        let mut cand_index = HashMap::new();
        for (ni, n) in prev.normals.iter().enumerate() {
            let n_tgt = n.target(&quiver);
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source == n_tgt {
                    let mut p = n.clone();
                    p.arrows.push(ai);
                    cand_index.insert((ni, ai), cand_paths.len());
                    cand_paths.push(p);
                }
            }
        }
        if cand_paths.is_empty() {
            break;
        }
        if deg > MAX_PATH_LEN {
            return Err(Error::InfiniteDimensional(format!(
                "normal paths persist beyond length {MAX_PATH_LEN}"
            )));
        }
        // Temporarily install the candidate index with an empty rho so the
        // builder can address this degree.
        builder.degrees.push(Degree {
            normals: Vec::new(),
            cand_index,
            rho: Matrix::zero(field.clone(), 0, cand_paths.len()),
        });

        // Relation instances r composed onto each normal path of complementary degree.
        let mut instance_rows: Vec<Vec<K::Elem>> = Vec::new();
        for r in &cleaned {
            let rlen = r.terms[0].1.len();
            if rlen > deg {
                continue;
            }
            let tail_deg = deg - rlen;
            let tails: Vec<Path> = builder.degrees[tail_deg].normals.clone();
            for tail in tails {
                if tail.target(&quiver) != r.terms[0].1.source {
                    continue;
                }
                let mut row = vec![field.zero(); cand_paths.len()];
                let mut nonzero = false;
                for (coeff, term) in &r.terms {
                    // Walk the term's arrows over the tail; stop at candidate level.
                    let mut d = tail_deg;
                    let mut vec = vec![field.zero(); builder.degrees[tail_deg].normals.len()];
                    let pos = builder.degrees[tail_deg]
                        .normals
                        .iter()
                        .position(|n| *n == tail)
                        .unwrap();
                    vec[pos] = field.one();
                    let mut dead = false;
                    for (step, &a) in term.arrows.iter().enumerate() {
                        if vec.iter().all(|c| field.is_zero(c)) {
                            dead = true;
                            break;
                        }
                        if step + 1 == term.arrows.len() {
                            let cand = builder.arrow_to_candidates(d, &vec, a);
                            for (k, c) in cand.iter().enumerate() {
                                if !field.is_zero(c) {
                                    row[k] = field.add(&row[k], &field.mul(coeff, c));
                                    nonzero = true;
                                }
                            }
                        } else {
                            vec = builder.arrow_reduce(d, &vec, a);
                            d += 1;
                        }
                    }
                    let _ = dead;
                }
                if nonzero {
                    instance_rows.push(row);
                }
            }
        }

        // Row-reduce the instances; pivot candidates die, free candidates
        // become the normal paths of this degree.
        let inst =
            Matrix::from_rows(field.clone(), if instance_rows.is_empty() { vec![] } else { instance_rows });
        let (pivots, rref) = if inst.rows() == 0 {
            (Vec::new(), Matrix::zero(field.clone(), 0, cand_paths.len()))
        } else {
            let r = inst.rref();
            (r.pivots, r.mat)
        };
        let is_pivot = {
            let mut v = vec![false; cand_paths.len()];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..cand_paths.len()).filter(|&j| !is_pivot[j]).collect();
        let normals: Vec<Path> = free.iter().map(|&j| cand_paths[j].clone()).collect();
        let mut rho = Matrix::zero(field.clone(), normals.len(), cand_paths.len());
        for (k, &fj) in free.iter().enumerate() {
            rho.set(k, fj, field.one());
        }
        for (r_idx, &pj) in pivots.iter().enumerate() {
            for (k, &fj) in free.iter().enumerate() {
                rho.set(k, pj, field.neg(rref.at(r_idx, fj)));
            }
        }
        let empty = normals.is_empty();
        total_dim += normals.len();
        if total_dim > MAX_DIM {
            return Err(Error::InfiniteDimensional(format!("dimension exceeds cap {MAX_DIM}")));
        }
        let top = builder.degrees.last_mut().unwrap();
        top.normals = normals;
        top.rho = rho;
        if empty {
            builder.degrees.pop();
            break;
        }
    }

    // Assemble the global basis: degree-major order.
    let mut basis: Vec<BasisElem> = Vec::new();
    let mut global_paths: Vec<Path> = Vec::new();
    let mut deg_offset: Vec<usize> = Vec::new();
    for (d, degd) in builder.degrees.iter().enumerate() {
        deg_offset.push(basis.len());
        for p in &degd.normals {
            basis.push(BasisElem {
                label: p.label(&quiver),
                source: p.source,
                target: p.target(&quiver),
                degree: d,
            });
            global_paths.push(p.clone());
        }
    }
    let idempotent: Vec<usize> = (0..nv).collect();

    // Multiplication: concatenate then reduce. b_i * b_j composes j first.
    let n = basis.len();
    let mut mult: Vec<Vec<SparseVec<K>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (&global_paths[i], &global_paths[j]);
            if pj.target(&quiver) != pi.source {
                continue;
            }
            let mut comp = pj.clone();
            comp.arrows.extend(&pi.arrows);
            let (d, vec) = builder.reduce_path(&comp);
            let mut sv: SparseVec<K> = Vec::new();
            if !vec.is_empty() {
                for (k, c) in vec.iter().enumerate() {
                    if !field.is_zero(c) {
                        sv.push((deg_offset[d] + k, c.clone()));
                    }
                }
            }
            mult[i][j] = sv;
        }
    }

    // Radical: every positive-length normal path (graded quotient of an
    // admissible ideal, so the positive part is exactly the radical).
    let radical: Vec<SparseVec<K>> =
        (nv..n).map(|b| vec![(b, field.one())]).collect();

    let arrow_basis: Vec<usize> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            let d1 = &builder.degrees[1];
            let pos = d1
                .normals
                .iter()
                .position(|p| p.arrows == vec![ai])
                .expect("arrows survive admissible quotients");
            deg_offset[1] + pos
        })
        .collect();

    let algebra = FDAlgebra {
        field,
        vertex_names: quiver.vertex_names.clone(),
        basis,
        idempotent,
        mult,
        radical,
        presentation: Some(Presentation {
            quiver,
            relations: cleaned,
            arrow_basis,
            basis_paths: global_paths,
        }),
    };
    debug_assert!(algebra.validate_tables().is_ok());
    Ok(algebra)
}

/// The tensor product of a commutative one-vertex algebra with the path
/// algebra of an acyclic quiver, presented as a path algebra on the quiver
/// enlarged by one loop per vertex for each base generator, with the base
/// relations copied to every vertex and commutation relations making the
/// loops act uniformly along arrows.
pub fn build_tensor_algebra<K: Field>(base: &FDAlgebra<K>, q: &Quiver) -> Result<FDAlgebra<K>> {
    let pres = base.presentation().ok_or_else(|| {
        Error::BadSetup("tensor base must be quiver-presented".into())
    })?;
    if base.num_vertices() != 1 {
        return Err(Error::BadSetup("tensor base must have a single vertex".into()));
    }
    if !base.is_commutative() {
        return Err(Error::NonCommutativeBase(
            "tensor base multiplication table is not symmetric".into(),
        ));
    }
    q.validate()?;
    if !q.is_acyclic() {
        return Err(Error::InfiniteDimensional("tensor quiver has an oriented cycle".into()));
    }

    let nv = q.num_vertices();
    let base_arrows = &pres.quiver.arrows;
    let mut arrows: Vec<Arrow> = q.arrows.clone();
    // loop_idx[base arrow][vertex] -> arrow index in the enlarged quiver.
    let mut loop_idx = vec![vec![0usize; nv]; base_arrows.len()];
    for (xi, x) in base_arrows.iter().enumerate() {
        for v in 0..nv {
            loop_idx[xi][v] = arrows.len();
            arrows.push(Arrow {
                name: format!("{}@{}", x.name, q.vertex_names[v]),
                source: v,
                target: v,
            });
        }
    }
    let big = Quiver::new(q.vertex_names.clone(), arrows)?;

    let mut relations: Vec<Relation<K>> = Vec::new();
    // Base relations at every vertex.
    for r in &pres.relations {
        for v in 0..nv {
            let terms = r
                .terms
                .iter()
                .map(|(c, p)| {
                    let arrows = p.arrows.iter().map(|&a| loop_idx[a][v]).collect();
                    (c.clone(), Path { source: v, arrows })
                })
                .collect();
            relations.push(Relation { terms });
        }
    }
    // Commutation: walking a then x at the target equals x at the source then a.
    for (ai, a) in q.arrows.iter().enumerate() {
        for (xi, _) in base_arrows.iter().enumerate() {
            let p1 = Path { source: a.source, arrows: vec![ai, loop_idx[xi][a.target]] };
            let p2 = Path { source: a.source, arrows: vec![loop_idx[xi][a.source], ai] };
            relations.push(Relation {
                terms: vec![(base.field().one(), p1), (base.field().neg(&base.field().one()), p2)],
            });
        }
    }

    let result = build_path_algebra(base.field().clone(), big, relations)?;
    if let Some(paths) = q.path_count() {
        debug_assert_eq!(result.dim(), base.dim() * paths);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    pub fn a3_quiver() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
            ],
        )
        .unwrap()
    }

    pub fn dual_numbers(p: u64) -> FDAlgebra<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        let q = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let rel = Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 0] })] };
        build_path_algebra(f, q, vec![rel]).unwrap()
    }

    #[test]
    fn a3_path_algebra_has_dimension_six() {
        let a = build_path_algebra(Rationals, a3_quiver(), vec![]).unwrap();
        assert_eq!(a.dim(), 6);
        a.validate_tables().unwrap();
        let labels: Vec<&str> = a.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, vec!["e_1", "e_2", "e_3", "a", "b", "a.b"]);
        // a.b walks a then b: source 1, target 3.
        let ab = &a.basis()[5];
        assert_eq!((ab.source, ab.target), (0, 2));
        // b * a is the composite; a * b is zero.
        let (bi, ai) = (4, 3);
        assert_eq!(a.mul_basis(bi, ai), &vec![(5, Rationals.from_int(1))]);
        assert!(a.mul_basis(ai, bi).is_empty());
        assert_eq!(a.radical_basis().len(), 3);
    }

    #[test]
    fn loop_without_relations_is_infinite() {
        let q = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        match build_path_algebra(Rationals, q, vec![]) {
            Err(Error::InfiniteDimensional(_)) => {}
            other => panic!("expected InfiniteDimensional, got {other:?}"),
        }
    }

    #[test]
    fn dual_numbers_have_dimension_two() {
        let a = dual_numbers(2);
        assert_eq!(a.dim(), 2);
        a.validate_tables().unwrap();
        // x * x = 0.
        assert!(a.mul_basis(1, 1).is_empty());
        assert_eq!(a.radical_basis().len(), 1);
        assert!(a.is_commutative());
    }

    #[test]
    fn commutative_square_with_commutation_relation() {
        // 4-vertex commutative square: two paths from corner to corner identified.
        let f = Rationals;
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 0, target: 2 },
                Arrow { name: "c".into(), source: 1, target: 3 },
                Arrow { name: "d".into(), source: 2, target: 3 },
            ],
        )
        .unwrap();
        let rel = Relation {
            terms: vec![
                (f.one(), Path { source: 0, arrows: vec![0, 2] }),
                (f.neg(&f.one()), Path { source: 0, arrows: vec![1, 3] }),
            ],
        };
        let a = build_path_algebra(f, q, vec![rel]).unwrap();
        // 4 vertices + 4 arrows + 1 identified diagonal.
        assert_eq!(a.dim(), 9);
        a.validate_tables().unwrap();
    }

    #[test]
    fn malformed_relations_are_rejected() {
        let f = Rationals;
        let q = a3_quiver();
        // Term of length 1.
        let short = Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0] })] };
        assert!(matches!(
            build_path_algebra(f, q.clone(), vec![short]),
            Err(Error::MalformedRelation(_))
        ));
        // Mismatched endpoints within one relation need two parallel-ish paths;
        // in A3 any two distinct length-2 paths share endpoints, so test the
        // mixed-length rejection on a loop quiver instead.
        let lq = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let mixed = Relation {
            terms: vec![
                (f.one(), Path { source: 0, arrows: vec![0, 0] }),
                (f.neg(&f.one()), Path { source: 0, arrows: vec![0, 0, 0] }),
            ],
        };
        assert!(matches!(
            build_path_algebra(f, lq, vec![mixed]),
            Err(Error::MalformedRelation(_))
        ));
    }

    #[test]
    fn non_composable_relation_path_is_rejected() {
        let f = Rationals;
        let q = a3_quiver();
        let bad = Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![1, 0] })] };
        assert!(build_path_algebra(f, q, vec![bad]).is_err());
    }

    #[test]
    fn opposite_involution_restores_tables() {
        let a = build_path_algebra(Rationals, a3_quiver(), vec![]).unwrap();
        let op = a.opposite();
        op.validate_tables().unwrap();
        assert_eq!(op.opposite(), a);
        // In the opposite algebra the composite multiplies the other way.
        assert!(op.mul_basis(4, 3).is_empty());
        assert_eq!(op.mul_basis(3, 4).len(), 1);
    }

    #[test]
    fn tensor_algebra_dimensions() {
        let base = dual_numbers(2);
        let f = *base.field();
        let a2 = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        )
        .unwrap();
        let t = build_tensor_algebra(&base, &a2).unwrap();
        // dim = 2 * (paths of A2) = 2 * 3.
        assert_eq!(t.dim(), 6);
        t.validate_tables().unwrap();

        let a3 = a3_quiver();
        let t3 = build_tensor_algebra(&base, &a3).unwrap();
        assert_eq!(t3.dim(), 12);
        t3.validate_tables().unwrap();

        // Field base: tensor is just the path algebra.
        let kq = Quiver::new(vec!["*".into()], vec![]).unwrap();
        let k = build_path_algebra(f, kq, vec![]).unwrap();
        let plain = build_tensor_algebra(&k, &a3).unwrap();
        assert_eq!(plain.dim(), 6);
    }

    #[test]
    fn tensor_algebra_rejects_cycles_and_noncommutative_base() {
        let base = dual_numbers(2);
        let f = *base.field();
        let cyc = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        )
        .unwrap();
        assert!(matches!(
            build_tensor_algebra(&base, &cyc),
            Err(Error::InfiniteDimensional(_))
        ));

        // Noncommutative base: two loops with only degree-2 zero relations.
        let q2 = Quiver::new(
            vec!["*".into()],
            vec![
                Arrow { name: "x".into(), source: 0, target: 0 },
                Arrow { name: "y".into(), source: 0, target: 0 },
            ],
        )
        .unwrap();
        let rels: Vec<Relation<PrimeField>> = vec![
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 0] })] },
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![1, 1] })] },
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 1] })] },
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![1, 0] })] },
        ];
        let freeish = build_path_algebra(f, q2.clone(), rels.clone()).unwrap();
        assert_eq!(freeish.dim(), 3);
        // Make x*y and y*x survive but differ: impose nothing between them.
        let rels2: Vec<Relation<PrimeField>> = vec![
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 0] })] },
            Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![1, 1] })] },
            Relation {
                terms: vec![
                    (f.one(), Path { source: 0, arrows: vec![0, 1] }),
                    (f.one(), Path { source: 0, arrows: vec![1, 0] }),
                ],
            },
        ];
        // Degree 3 paths: all contain xx, yy, or reduce through xy = -yx; the
        // quotient is finite dimensional and noncommutative (xy != yx in it).
        let nc = build_path_algebra(f, q2, rels2);
        if let Ok(nc) = nc {
            if !nc.is_commutative() {
                let a2 = Quiver::new(
                    vec!["1".into(), "2".into()],
                    vec![Arrow { name: "a".into(), source: 0, target: 1 }],
                )
                .unwrap();
                assert!(matches!(
                    build_tensor_algebra(&nc, &a2),
                    Err(Error::NonCommutativeBase(_))
                ));
            }
        }
    }

    #[test]
    fn quiver_path_count() {
        assert_eq!(a3_quiver().path_count(), Some(6));
        let lq = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        assert_eq!(lq.path_count(), None);
    }
}
