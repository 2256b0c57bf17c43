//! (S, R)-bimodules: a right R-module carrying a commuting left S-action,
//! one square matrix per S-basis element and R-vertex.
//!
//! The key constructor is the endomorphism bimodule: S = End(T_R) built from
//! a decomposition of T into indecomposables, with the radical assembled
//! structurally (all maps between non-isomorphic summands, plus the radical
//! of each local endomorphism ring).

use std::sync::Arc;

use crate::algebra::{BasisElem, FDAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{LinSolver, Matrix};
use crate::module::{
    decompose, hom_space, same_algebra, Module, ModuleMap,
};

#[derive(Debug, Clone)]
pub struct Bimodule<K: Field> {
    left: Arc<FDAlgebra<K>>,
    module: Module<K>,
    /// left_act[s][v]: T_v -> T_v, the action of S-basis element s on the
    /// R-vertex component v.
    left_act: Vec<Vec<Matrix<K>>>,
    /// corner_bases[sv][rv]: columns spanning the image of left e_sv on T_rv.
    corner_bases: Vec<Vec<Matrix<K>>>,
}

impl<K: Field> Bimodule<K> {
    pub fn new(
        left: Arc<FDAlgebra<K>>,
        module: Module<K>,
        left_act: Vec<Vec<Matrix<K>>>,
    ) -> Result<Self> {
        let f = module.field().clone();
        let r = module.algebra();
        let nv_r = r.num_vertices();
        if left_act.len() != left.dim() {
            return Err(Error::ShapeMismatch("one left action table per S-basis element".into()));
        }
        for (s, tables) in left_act.iter().enumerate() {
            if tables.len() != nv_r {
                return Err(Error::ShapeMismatch("one left action matrix per R-vertex".into()));
            }
            for (v, m) in tables.iter().enumerate() {
                if m.rows() != module.dim_at(v) || m.cols() != module.dim_at(v) {
                    return Err(Error::ShapeMismatch(format!(
                        "left action of {} at vertex {} must be {}x{}",
                        left.basis()[s].label,
                        r.vertex_names()[v],
                        module.dim_at(v),
                        module.dim_at(v)
                    )));
                }
            }
        }
        // Unit acts as the identity.
        for v in 0..nv_r {
            let mut acc = Matrix::zero(f.clone(), module.dim_at(v), module.dim_at(v));
            for sv in 0..left.num_vertices() {
                acc = acc.add(&left_act[left.idempotent(sv)][v]);
            }
            if acc != Matrix::identity(f.clone(), module.dim_at(v)) {
                return Err(Error::Validation("left idempotents do not sum to the identity".into()));
            }
        }
        // Homomorphism: lambda(s * s') = lambda(s) o lambda(s').
        for i in 0..left.dim() {
            for j in 0..left.dim() {
                for v in 0..nv_r {
                    let mut expect = Matrix::zero(f.clone(), module.dim_at(v), module.dim_at(v));
                    for (b, c) in left.mul_basis(i, j) {
                        expect = expect.add(&left_act[*b][v].scale(c));
                    }
                    if left_act[i][v].mul(&left_act[j][v]) != expect {
                        return Err(Error::Validation(format!(
                            "left action not multiplicative on ({}, {})",
                            left.basis()[i].label, left.basis()[j].label
                        )));
                    }
                }
            }
        }
        // Commutation with the right action.
        for s in 0..left.dim() {
            for b in 0..r.dim() {
                let be = &r.basis()[b];
                let lhs = left_act[s][be.source].mul(module.act(b));
                let rhs = module.act(b).mul(&left_act[s][be.target]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "left action of {} does not commute with right action of {}",
                        left.basis()[s].label, be.label
                    )));
                }
            }
        }
        let corner_bases = (0..left.num_vertices())
            .map(|sv| {
                let e = left.idempotent(sv);
                (0..nv_r).map(|rv| left_act[e][rv].image_basis()).collect()
            })
            .collect();
        Ok(Bimodule { left, module, left_act, corner_bases })
    }

    pub fn left_algebra(&self) -> &Arc<FDAlgebra<K>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<FDAlgebra<K>> {
        self.module.algebra()
    }

    pub fn module(&self) -> &Module<K> {
        &self.module
    }

    pub fn left_act(&self, s: usize) -> &[Matrix<K>] {
        &self.left_act[s]
    }

    /// Left action of a dense S-element on the R-vertex component v.
    pub fn left_act_elem(&self, x: &[K::Elem], v: usize) -> Matrix<K> {
        let f = self.module.field().clone();
        let d = self.module.dim_at(v);
        let mut out = Matrix::zero(f.clone(), d, d);
        for (s, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                out = out.add(&self.left_act[s][v].scale(c));
            }
        }
        out
    }

    /// Total dimension of the corner e_v T.
    pub fn corner_total_dim(&self, sv: usize) -> usize {
        self.corner_bases[sv].iter().map(|b| b.cols()).sum()
    }

    /// Left action of a dense element x in e_to S e_from, restricted to the
    /// corners: e_from T -> e_to T in the corner coordinates (R-vertex blocks
    /// stacked in vertex order).
    pub fn corner_left_act(&self, x: &[K::Elem], from_sv: usize, to_sv: usize) -> Matrix<K> {
        let f = self.module.field().clone();
        let nv_r = self.module.algebra().num_vertices();
        let blocks: Vec<Matrix<K>> = (0..nv_r)
            .map(|rv| {
                let act = self.left_act_elem(x, rv);
                let img = act.mul(&self.corner_bases[from_sv][rv]);
                self.corner_bases[to_sv][rv]
                    .solve(&img)
                    .expect("left action maps corners to corners")
            })
            .collect();
        let refs: Vec<&Matrix<K>> = blocks.iter().collect();
        Matrix::block_diag(f, &refs)
    }

    /// Corner basis at one (S-vertex, R-vertex) pair, columns in T_rv coordinates.
    pub fn corner_basis(&self, sv: usize, rv: usize) -> &Matrix<K> {
        &self.corner_bases[sv][rv]
    }

    /// The corner e_v T as a right R-module with its inclusion into T.
    pub fn corner_module(&self, sv: usize) -> (Module<K>, ModuleMap<K>) {
        let r = self.module.algebra().clone();
        let dims: Vec<usize> = self.corner_bases[sv].iter().map(|b| b.cols()).collect();
        let incl_mats: Vec<Matrix<K>> = self.corner_bases[sv].clone();
        let act = (0..r.dim())
            .map(|b| {
                let be = &r.basis()[b];
                let img = self.module.act(b).mul(&incl_mats[be.target]);
                incl_mats[be.source]
                    .solve(&img)
                    .expect("corner is closed under the right action")
            })
            .collect();
        let corner = Module::new_unchecked(r, dims, act);
        let incl = ModuleMap::new(corner.clone(), self.module.clone(), incl_mats);
        (corner, incl)
    }

    /// T as a left S-module, i.e. a right module over the opposite of S,
    /// graded by the corners e_v T.
    pub fn as_left_module(&self, s_op: &Arc<FDAlgebra<K>>) -> Module<K> {
        debug_assert!(**s_op == self.left.opposite());
        let f = self.module.field().clone();
        let nv_s = self.left.num_vertices();
        let nv_r = self.module.algebra().num_vertices();
        let dims: Vec<usize> =
            (0..nv_s).map(|sv| self.corner_bases[sv].iter().map(|b| b.cols()).sum()).collect();
        // act of b (same basis index in the opposite): lambda(b) restricted
        // from the source corner (in S) to the target corner, blockwise over
        // R-vertices.
        let act = (0..self.left.dim())
            .map(|b| {
                let be = &self.left.basis()[b];
                // In S: b maps e_{be.source} T into e_{be.target} T.
                let (u, w) = (be.source, be.target);
                let mut blocks = Vec::new();
                for rv in 0..nv_r {
                    let img = self.left_act[b][rv].mul(&self.corner_bases[u][rv]);
                    let expr = self.corner_bases[w][rv]
                        .solve(&img)
                        .expect("left action maps corners to corners");
                    blocks.push(expr);
                }
                let refs: Vec<&Matrix<K>> = blocks.iter().collect();
                Matrix::block_diag(f.clone(), &refs)
            })
            .collect();
        Module::new_unchecked(s_op.clone(), dims, act)
    }

    /// The regular bimodule: T = A with both actions by multiplication.
    pub fn regular(algebra: &Arc<FDAlgebra<K>>) -> Self {
        let a = algebra.as_ref();
        let f = a.field().clone();
        let module = Module::regular(algebra);
        let nv = a.num_vertices();
        let mut comp: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, b) in a.basis().iter().enumerate() {
            comp[b.source].push(i);
        }
        let left_act = (0..a.dim())
            .map(|s| {
                (0..nv)
                    .map(|v| {
                        let mut m = Matrix::zero(f.clone(), comp[v].len(), comp[v].len());
                        for (col, &p) in comp[v].iter().enumerate() {
                            for (out, c) in a.mul_basis(s, p) {
                                if let Some(row) = comp[v].iter().position(|&x| x == *out) {
                                    let cur = f.add(m.at(row, col), c);
                                    m.set(row, col, cur);
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Bimodule::new(algebra.clone(), module, left_act).expect("regular bimodule is valid")
    }
}

/// N tensor_S T as a right R-module, with the quotient projections and
/// sections per R-vertex (coordinates on N_total tensor T_v, N-index major).
#[derive(Debug, Clone)]
pub struct TensorModule<K: Field> {
    pub module: Module<K>,
    pub proj: Vec<Matrix<K>>,
    pub section: Vec<Matrix<K>>,
}

pub fn tensor_over<K: Field>(n: &Module<K>, t: &Bimodule<K>) -> TensorModule<K> {
    assert!(same_algebra(n.algebra(), t.left_algebra()), "tensor factor must be over S");
    let f = n.field().clone();
    let s = t.left_algebra().clone();
    let r = t.right_algebra().clone();
    let nt = n.total_dim();
    let nv_r = r.num_vertices();
    let tdims: Vec<usize> = (0..nv_r).map(|v| t.module().dim_at(v)).collect();

    let mut proj = Vec::new();
    let mut section = Vec::new();
    let mut dims = Vec::new();
    for v in 0..nv_r {
        let dv = tdims[v];
        let amb = nt * dv;
        let mut relators: Vec<Vec<K::Elem>> = Vec::new();
        for sb in 0..s.dim() {
            let ns = n.act_total(&s.basis_vector(sb));
            let st = &t.left_act(sb)[v];
            for x in 0..nt {
                for y in 0..dv {
                    // (n_x * s) tensor e_y - n_x tensor (s * e_y)
                    let mut rel = vec![f.zero(); amb];
                    let mut nonzero = false;
                    for i in 0..nt {
                        let c = ns.at(i, x);
                        if !f.is_zero(c) {
                            rel[i * dv + y] = f.add(&rel[i * dv + y], c);
                            nonzero = true;
                        }
                    }
                    for j in 0..dv {
                        let c = st.at(j, y);
                        if !f.is_zero(c) {
                            rel[x * dv + j] = f.sub(&rel[x * dv + j], c);
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        relators.push(rel);
                    }
                }
            }
        }
        let rel_mat = Matrix::from_fn(f.clone(), amb, relators.len(), |i, j| relators[j][i].clone());
        let p = crate::matrix::quotient_projection(amb, &rel_mat);
        dims.push(p.rows());
        let sect = p.solve(&Matrix::identity(f.clone(), p.rows())).expect("full row rank");
        proj.push(p);
        section.push(sect);
    }

    // Right action: descend id_N tensor act_T(b).
    let act = (0..r.dim())
        .map(|b| {
            let be = &r.basis()[b];
            let (u, w) = (be.source, be.target);
            let tb = t.module().act(b); // tdims[u] x tdims[w]
            let big = Matrix::from_fn(f.clone(), nt * tdims[u], nt * tdims[w], |rc, cc| {
                let (i, j) = (rc / tdims[u], rc % tdims[u]);
                let (x, y) = (cc / tdims[w], cc % tdims[w]);
                if i == x {
                    tb.at(j, y).clone()
                } else {
                    f.zero()
                }
            });
            proj[u].mul(&big).mul(&section[w])
        })
        .collect();
    let module = Module::new_unchecked(r, dims, act);
    TensorModule { module, proj, section }
}

/// Hom_R(T, M) as a right S-module, with the chosen basis maps per corner.
#[derive(Debug, Clone)]
pub struct HomModule<K: Field> {
    pub module: Module<K>,
    /// Per S-vertex: the corner e_v T with its inclusion into T.
    pub corners: Vec<(Module<K>, ModuleMap<K>)>,
    /// Per S-vertex: the chosen basis of Hom_R(e_v T, M).
    pub bases: Vec<crate::module::HomSpace<K>>,
}

pub fn hom_module<K: Field>(t: &Bimodule<K>, m: &Module<K>) -> HomModule<K> {
    assert!(same_algebra(m.algebra(), t.right_algebra()), "hom target must be over R");
    let s = t.left_algebra().clone();
    let f = m.field().clone();
    let nv_s = s.num_vertices();
    let corners: Vec<(Module<K>, ModuleMap<K>)> = (0..nv_s).map(|v| t.corner_module(v)).collect();
    let bases: Vec<crate::module::HomSpace<K>> =
        corners.iter().map(|(c, _)| hom_space(c, m)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();

    // Action of s: u -> v in S maps Hom(e_v T, M) to Hom(e_u T, M) by
    // precomposition with lambda(s): e_u T -> e_v T.
    let act = (0..s.dim())
        .map(|sb| {
            let se = &s.basis()[sb];
            let (u, v) = (se.source, se.target);
            // lambda(s) restricted: corner_u -> corner_v, per R-vertex.
            let nv_r = m.algebra().num_vertices();
            let restr_mats: Vec<Matrix<K>> = (0..nv_r)
                .map(|rv| {
                    let img = t.left_act(sb)[rv].mul(&corners[u].1.mats()[rv]);
                    corners[v].1.mats()[rv].solve(&img).expect("corner to corner")
                })
                .collect();
            let restr = ModuleMap::new(corners[u].0.clone(), corners[v].0.clone(), restr_mats);
            let mut mat = Matrix::zero(f.clone(), dims[u], dims[v]);
            for (col, psi) in bases[v].basis.iter().enumerate() {
                let comp = psi.compose_after(&restr);
                let coords = bases[u].express(&comp).expect("precomposition stays in the hom space");
                for (row, c) in coords.iter().enumerate() {
                    mat.set(row, col, c.clone());
                }
            }
            mat
        })
        .collect();
    let module = Module::new_unchecked(s, dims, act);
    HomModule { module, corners, bases }
}

/// Radical of the endomorphism ring of an indecomposable module, as
/// coefficient vectors over the given hom basis.
fn local_radical<K: Field>(
    n: &Module<K>,
    basis: &crate::module::HomSpace<K>,
) -> Result<Vec<Vec<K::Elem>>> {
    let f = n.field().clone();
    let d = basis.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let p = f.characteristic();
    let total = n.total_dim();
    let total_mats: Vec<Matrix<K>> = basis
        .basis
        .iter()
        .map(|b| {
            let blocks: Vec<&Matrix<K>> = b.mats().iter().collect();
            Matrix::block_diag(f.clone(), &blocks)
        })
        .collect();
    if p == 0 || (total as u64) % p != 0 {
        // Trace form: rad = {x : tr(x y) = 0 for all y}. Valid for a local
        // ring acting faithfully when the characteristic does not divide
        // dim N (units pair with their inverses to trace = dim N != 0).
        let gram = Matrix::from_fn(f.clone(), d, d, |i, j| {
            let prod = total_mats[i].mul(&total_mats[j]);
            let mut tr = f.zero();
            for k in 0..total {
                tr = f.add(&tr, prod.at(k, k));
            }
            tr
        });
        let ker = gram.kernel_basis();
        return Ok((0..ker.cols()).map(|c| ker.col(c)).collect());
    }
    // Characteristic divides dim N. Commutative case: nilpotents form the
    // kernel of the iterated Frobenius, which is F_p-linear.
    let commutative = (0..d).all(|i| {
        (0..d).all(|j| total_mats[i].mul(&total_mats[j]) == total_mats[j].mul(&total_mats[i]))
    });
    let flat_cols: Vec<Vec<K::Elem>> = basis.basis.iter().map(|b| b.flatten()).collect();
    let flat = Matrix::from_fn(f.clone(), flat_cols[0].len(), d, |i, j| flat_cols[j][i].clone());
    let solver = LinSolver::new(&flat);
    if commutative {
        let mut frob = Matrix::zero(f.clone(), d, d);
        for j in 0..d {
            let mut pw = Matrix::identity(f.clone(), total);
            for _ in 0..p {
                pw = pw.mul(&total_mats[j]);
            }
            // Express pw back in the basis via the per-vertex flattening.
            let mut per_vertex: Vec<K::Elem> = Vec::new();
            let nv = n.algebra().num_vertices();
            let mut off = 0;
            for v in 0..nv {
                let dv = n.dim_at(v);
                for i in 0..dv {
                    for jj in 0..dv {
                        per_vertex.push(pw.at(off + i, off + jj).clone());
                    }
                }
                off += dv;
            }
            let coords = solver
                .express(&per_vertex)
                .ok_or_else(|| Error::Unsupported("Frobenius image left the endomorphism ring".into()))?;
            for (i, c) in coords.iter().enumerate() {
                frob.set(i, j, c.clone());
            }
        }
        let mut power = Matrix::identity(f.clone(), d);
        let mut pm = 1u64;
        while pm < total as u64 + 1 {
            power = frob.mul(&power);
            pm = pm.saturating_mul(p);
        }
        let ker = power.kernel_basis();
        return Ok((0..ker.cols()).map(|c| ker.col(c)).collect());
    }
    // Last resort: enumerate a small field.
    if let Some(elems) = f.enumerate(16) {
        if (elems.len() as f64).powi(d as i32) <= 4096.0 {
            let mut nilpotents: Vec<Vec<K::Elem>> = Vec::new();
            let mut idx = vec![0usize; d];
            'outer: loop {
                let coeffs: Vec<K::Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
                let mut mat = Matrix::zero(f.clone(), total, total);
                for (c, tm) in coeffs.iter().zip(&total_mats) {
                    mat = mat.add(&tm.scale(c));
                }
                let mut pw = Matrix::identity(f.clone(), total);
                for _ in 0..=total {
                    pw = pw.mul(&mat);
                }
                if pw.is_zero() {
                    nilpotents.push(coeffs);
                }
                let mut k = 0;
                loop {
                    if k == d {
                        break 'outer;
                    }
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
            let mat =
                Matrix::from_fn(f.clone(), d, nilpotents.len(), |i, j| nilpotents[j][i].clone());
            let img = mat.image_basis();
            return Ok((0..img.cols()).map(|c| img.col(c)).collect());
        }
    }
    Err(Error::Unsupported(
        "radical of a noncommutative local endomorphism ring over a large field in dividing characteristic".into(),
    ))
}

/// Endomorphism algebra of a nonzero module, returned with the bimodule
/// structure (S acting on the left of T = m, R acting on the right).
pub fn endo_algebra<K: Field>(m: &Module<K>) -> Result<(Arc<FDAlgebra<K>>, Bimodule<K>)> {
    if m.is_zero() {
        return Err(Error::ZeroModule("endomorphism algebra of the zero module".into()));
    }
    let f = m.field().clone();
    let dec = decompose(m, 0)?;
    // Occurrences: group representatives repeated with multiplicity, with
    // the composite inclusion/projection relative to m.
    let parts: Vec<&Module<K>> =
        dec.summands.iter().flat_map(|(g, k)| (0..*k).map(move |_| g)).collect();
    let (sum, incls, projs) = Module::direct_sum_with_maps(m.algebra(), &parts);
    debug_assert!(sum == *dec.iso.source());
    let into_m: Vec<ModuleMap<K>> = incls.iter().map(|i| dec.iso.compose_after(i)).collect();
    let from_m: Vec<ModuleMap<K>> = projs.iter().map(|p| p.compose_after(&dec.iso_inv)).collect();
    let occ_group: Vec<usize> = dec
        .summands
        .iter()
        .enumerate()
        .flat_map(|(gi, (_, k))| (0..*k).map(move |_| gi))
        .collect();
    let reps: Vec<Module<K>> = dec.summands.iter().map(|(g, _)| g.clone()).collect();
    let n_occ = occ_group.len();

    // Per-group local endomorphism data: hom basis ordered id, radical, rest.
    struct GroupData<K: Field> {
        basis: Vec<ModuleMap<K>>,
        rad_count: usize,
    }
    let mut group_data: Vec<GroupData<K>> = Vec::new();
    for g in &reps {
        let hom = hom_space(g, g);
        let rad_coords = local_radical(g, &hom)?;
        let mut chosen: Vec<ModuleMap<K>> = vec![ModuleMap::identity(g)];
        for rc in &rad_coords {
            chosen.push(hom.combine(rc));
        }
        let rad_count = rad_coords.len();
        // Complete to a full basis (covers non-split residue fields).
        let mut flat: Vec<Vec<K::Elem>> = chosen.iter().map(|c| c.flatten()).collect();
        for b in &hom.basis {
            if flat.len() == hom.dim() {
                break;
            }
            let cand = b.flatten();
            let mut test = flat.clone();
            test.push(cand.clone());
            let mat = Matrix::from_fn(f.clone(), cand.len(), test.len(), |i, j| test[j][i].clone());
            if mat.rank() == test.len() {
                chosen.push(b.clone());
                flat.push(cand);
            }
        }
        if chosen.len() != hom.dim() {
            return Err(Error::DecompositionInconclusive(
                "local endomorphism basis completion failed".into(),
            ));
        }
        group_data.push(GroupData { basis: chosen, rad_count });
    }

    // Block bases: maps N_j -> N_i for occurrences i, j (source j, target i).
    struct Block<K: Field> {
        maps: Vec<ModuleMap<K>>,
        rad_flags: Vec<bool>,
        solver: Option<LinSolver<K>>,
    }
    let mut blocks: Vec<Vec<Block<K>>> = Vec::new();
    for i in 0..n_occ {
        let mut row = Vec::new();
        for j in 0..n_occ {
            let (gi, gj) = (occ_group[i], occ_group[j]);
            let (maps, rad_flags): (Vec<ModuleMap<K>>, Vec<bool>) = if gi == gj {
                let gd = &group_data[gi];
                let maps = gd.basis.clone();
                let flags: Vec<bool> = (0..maps.len())
                    .map(|k| {
                        if i == j {
                            k >= 1 && k <= gd.rad_count
                        } else {
                            // Distinct isomorphic occurrences: the radical
                            // part excludes the isomorphism itself.
                            k >= 1 && k <= gd.rad_count
                        }
                    })
                    .collect();
                (maps, flags)
            } else {
                let hom = hom_space(&reps[gj], &reps[gi]);
                let flags = vec![true; hom.dim()];
                (hom.basis, flags)
            };
            let solver = if maps.is_empty() {
                None
            } else {
                let flat: Vec<Vec<K::Elem>> = maps.iter().map(|m| m.flatten()).collect();
                let mat =
                    Matrix::from_fn(f.clone(), flat[0].len(), flat.len(), |a, b| flat[b][a].clone());
                Some(LinSolver::new(&mat))
            };
            row.push(Block { maps, rad_flags, solver });
        }
        blocks.push(row);
    }

    // Global basis layout.
    let mut basis_elems: Vec<BasisElem> = Vec::new();
    let mut elem_block: Vec<(usize, usize, usize)> = Vec::new(); // (i, j, k)
    let mut block_offset = vec![vec![0usize; n_occ]; n_occ];
    let mut idempotent = vec![0usize; n_occ];
    for i in 0..n_occ {
        for j in 0..n_occ {
            block_offset[i][j] = basis_elems.len();
            for k in 0..blocks[i][j].maps.len() {
                if i == j && k == 0 {
                    idempotent[i] = basis_elems.len();
                }
                let label = if i == j && k == 0 {
                    format!("e_{}", i + 1)
                } else {
                    format!("h{}_{}_{}", j + 1, i + 1, k)
                };
                basis_elems.push(BasisElem {
                    label,
                    source: j,
                    target: i,
                    degree: usize::from(!(i == j && k == 0)),
                });
                elem_block.push((i, j, k));
            }
        }
    }
    let dim_s = basis_elems.len();

    // Multiplication: b_x * b_y with y acting first; as endomorphisms this
    // is composition x o y, nonzero only when the occurrence indices chain.
    let mut mult: Vec<Vec<SparseVec<K>>> = vec![vec![Vec::new(); dim_s]; dim_s];
    for x in 0..dim_s {
        let (i, j, kx) = elem_block[x];
        for y in 0..dim_s {
            let (i2, j2, ky) = elem_block[y];
            if j != i2 {
                continue;
            }
            let comp = blocks[i][j].maps[kx].compose_after(&blocks[i2][j2].maps[ky]);
            let target_block = &blocks[i][j2];
            let Some(solver) = target_block.solver.as_ref() else {
                debug_assert!(comp.is_zero());
                continue;
            };
            let coords = solver
                .express(&comp.flatten())
                .expect("composites stay within hom blocks");
            let mut sv: SparseVec<K> = Vec::new();
            for (k, c) in coords.iter().enumerate() {
                if !f.is_zero(c) {
                    sv.push((block_offset[i][j2] + k, c.clone()));
                }
            }
            mult[x][y] = sv;
        }
    }

    // Radical: flagged basis elements.
    let radical: Vec<SparseVec<K>> = (0..dim_s)
        .filter(|&x| {
            let (i, j, k) = elem_block[x];
            blocks[i][j].rad_flags[k]
        })
        .map(|x| vec![(x, f.one())])
        .collect();

    let vertex_names: Vec<String> = (0..n_occ).map(|i| (i + 1).to_string()).collect();
    let s = Arc::new(FDAlgebra::from_tables(
        f.clone(),
        vertex_names,
        basis_elems,
        idempotent,
        mult,
        radical,
    )?);

    // Left action tables: the total endomorphism of m for each basis element.
    let nv_r = m.algebra().num_vertices();
    let left_act: Vec<Vec<Matrix<K>>> = (0..dim_s)
        .map(|x| {
            let (i, j, k) = elem_block[x];
            let endo = into_m[i]
                .compose_after(&blocks[i][j].maps[k])
                .compose_after(&from_m[j]);
            (0..nv_r).map(|v| endo.mats()[v].clone()).collect()
        })
        .collect();
    let bi = Bimodule::new(s.clone(), m.clone(), left_act)?;
    Ok((s, bi))
}

/// Is the left action map S -> End(T_R) bijective?
pub fn left_action_is_full<K: Field>(t: &Bimodule<K>) -> bool {
    let s = t.left_algebra();
    let f = t.module().field().clone();
    let end = hom_space(t.module(), t.module());
    if end.dim() != s.dim() {
        return false;
    }
    let cols: Vec<Vec<K::Elem>> = (0..s.dim())
        .map(|sb| {
            let mats: Vec<Matrix<K>> = t.left_act(sb).to_vec();
            ModuleMap::new(t.module().clone(), t.module().clone(), mats).flatten()
        })
        .collect();
    if cols.is_empty() {
        return s.dim() == 0;
    }
    let mat = Matrix::from_fn(f, cols[0].len(), cols.len(), |i, j| cols[j][i].clone());
    mat.rank() == s.dim()
}

/// Is the homothety R -> End(_S T) bijective? Right multiplication by r is
/// an S-linear endomorphism of T viewed as a left S-module.
pub fn homothety_is_full<K: Field>(t: &Bimodule<K>) -> bool {
    let r = t.right_algebra().clone();
    let f = t.module().field().clone();
    let s_op = Arc::new(t.left_algebra().opposite());
    let tl = t.as_left_module(&s_op);
    let end = hom_space(&tl, &tl);
    if end.dim() != r.dim() {
        return false;
    }
    // chi(r): per S-vertex, right multiplication in the corner basis.
    let nv_s = t.left_algebra().num_vertices();
    let nv_r = r.num_vertices();
    let mut cols: Vec<Vec<K::Elem>> = Vec::new();
    for b in 0..r.dim() {
        let act = t.module().act_total(&r.basis_vector(b));
        let mats: Vec<Matrix<K>> = (0..nv_s)
            .map(|sv| {
                // Corner basis as total vectors.
                let mut total_cols: Vec<Vec<K::Elem>> = Vec::new();
                for rv in 0..nv_r {
                    let cb = &t.corner_bases[sv][rv];
                    for c in 0..cb.cols() {
                        let mut v = vec![f.zero(); t.module().total_dim()];
                        for i in 0..cb.rows() {
                            v[t.module().offset(rv) + i] = cb.at(i, c).clone();
                        }
                        total_cols.push(v);
                    }
                }
                let dim_corner = total_cols.len();
                let basis_mat = Matrix::from_fn(
                    f.clone(),
                    t.module().total_dim(),
                    dim_corner,
                    |i, j| total_cols[j][i].clone(),
                );
                let img = act.mul(&basis_mat);
                basis_mat.solve(&img).expect("right action preserves corners")
            })
            .collect();
        let map = ModuleMap::new(tl.clone(), tl.clone(), mats);
        match end.express(&map) {
            Some(c) => cols.push(c),
            None => return false,
        }
    }
    let mat = Matrix::from_fn(f, end.dim(), cols.len(), |i, j| cols[j][i].clone());
    mat.rank() == r.dim()
}
