//! Deliberately naive reference implementations used to cross-check the
//! block-based homology engine. They share nothing with it beyond basic
//! linear algebra: covers here are generic (one projective per basis vector
//! of whatever is being covered, so resolutions are non-minimal) and the
//! cochain maps are obtained by expressing composites in explicit hom-space
//! bases. Slow on purpose; keep usage at test scale.

use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{hom_space, proj_component_indices, Module, ModuleMap};

/// Surjection onto m from one copy of e_v A per basis vector of m at v.
pub fn generic_cover<K: Field>(m: &Module<K>) -> ModuleMap<K> {
    let alg = m.algebra().clone();
    let f = m.field().clone();
    let nv = alg.num_vertices();
    let comp: Vec<Vec<Vec<usize>>> =
        (0..nv).map(|v| proj_component_indices(alg.as_ref(), v)).collect();
    let mut parts: Vec<Module<K>> = Vec::new();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for v in 0..nv {
        for i in 0..m.dim_at(v) {
            parts.push(Module::projective(&alg, v));
            gens.push((v, i));
        }
    }
    let refs: Vec<&Module<K>> = parts.iter().collect();
    let sum = Module::direct_sum(&alg, &refs);
    let mats: Vec<Matrix<K>> = (0..nv)
        .map(|w| {
            let mut mat = Matrix::zero(f.clone(), m.dim_at(w), sum.dim_at(w));
            let mut off = 0;
            for &(v, i) in &gens {
                for &q in &comp[v][w] {
                    let act = m.act(q);
                    for r in 0..m.dim_at(w) {
                        mat.set(r, off, act.at(r, i).clone());
                    }
                    off += 1;
                }
            }
            mat
        })
        .collect();
    ModuleMap::new(sum, m.clone(), mats)
}

pub struct OracleResolution<K: Field> {
    pub steps: Vec<Module<K>>,
    pub maps: Vec<ModuleMap<K>>,
}

/// Projective resolution by generic covers of successive kernels.
pub fn oracle_resolution<K: Field>(m: &Module<K>, depth: usize) -> OracleResolution<K> {
    let c0 = generic_cover(m);
    let mut steps = vec![c0.source().clone()];
    let mut maps = Vec::new();
    let mut cur = c0;
    for _ in 0..depth {
        let (ker, incl) = cur.kernel();
        let c = generic_cover(&ker);
        maps.push(incl.compose_after(&c));
        steps.push(c.source().clone());
        cur = c;
    }
    OracleResolution { steps, maps }
}

/// dim Ext^i against n for i = 0..=k, straight from the cochain complex
/// Hom(res, n). Requires res to extend at least one step past k.
pub fn oracle_ext_dims<K: Field>(
    res: &OracleResolution<K>,
    n: &Module<K>,
    k: usize,
) -> Vec<usize> {
    assert!(res.maps.len() > k);
    let f = n.field().clone();
    let mut deltas: Vec<Matrix<K>> = Vec::new();
    for i in 0..=k {
        let hi = hom_space(&res.steps[i], n);
        let hnext = hom_space(&res.steps[i + 1], n);
        let mut mat = Matrix::zero(f.clone(), hnext.dim(), hi.dim());
        for (j, phi) in hi.basis.iter().enumerate() {
            let comp = phi.compose_after(&res.maps[i]);
            let coords = hnext.express(&comp).expect("composite is a module map");
            for (r, c) in coords.iter().enumerate() {
                mat.set(r, j, c.clone());
            }
        }
        deltas.push(mat);
    }
    (0..=k)
        .map(|i| {
            let cocycles = deltas[i].cols() - deltas[i].rank();
            let coboundaries = if i == 0 { 0 } else { deltas[i - 1].rank() };
            cocycles - coboundaries
        })
        .collect()
}
