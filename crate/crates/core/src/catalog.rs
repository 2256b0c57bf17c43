//! Deterministic module catalogs: a finite, seeded stock of test modules
//! over an algebra, built from the standard families (simples, projectives,
//! injectives), their syzygies and cosyzygies, transpose translates, and
//! pseudo-random extensions, then split into indecomposables and deduplicated
//! up to isomorphism.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{projective_cover, syzygy, transpose};
use crate::matrix::Matrix;
use crate::module::{decompose, hom_space, is_isomorphic, Module};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogSpec {
    /// How deep to chase syzygies and cosyzygies of the simples.
    pub depth: usize,
    /// How many seeded random extensions to throw in.
    pub extensions: usize,
}

impl Default for CatalogSpec {
    fn default() -> Self {
        CatalogSpec { depth: 4, extensions: 8 }
    }
}

/// Parse "depth=4,extensions=50" (either key optional, any order).
pub fn parse_catalog_spec(s: &str) -> Result<CatalogSpec> {
    let mut spec = CatalogSpec::default();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::BadSetup(format!("catalog spec entry `{part}` is not key=value")))?;
        let n: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::BadSetup(format!("catalog spec value `{value}` is not a count")))?;
        match key.trim() {
            "depth" => spec.depth = n,
            "extensions" => spec.extensions = n,
            other => {
                return Err(Error::BadSetup(format!("unknown catalog spec key `{other}`")));
            }
        }
    }
    Ok(spec)
}

/// The middle term of a seeded extension of x by y: push the syzygy of x out
/// along a random map into y. Returns None when Ext^1(x, y) has no room.
fn extension_middle<K: Field>(
    x: &Module<K>,
    y: &Module<K>,
    rng: &mut ChaCha8Rng,
) -> Option<Module<K>> {
    let (p, cover) = projective_cover(x);
    let (omega, incl) = cover.kernel();
    if omega.is_zero() {
        return None;
    }
    let hs = hom_space(&omega, y);
    if hs.dim() == 0 {
        return None;
    }
    let f = x.field().clone();
    let mut coeffs: Vec<K::Elem> =
        (0..hs.dim()).map(|_| if rng.gen_bool(0.5) { f.one() } else { f.zero() }).collect();
    if coeffs.iter().all(|c| f.is_zero(c)) {
        coeffs[0] = f.one();
    }
    let phi = hs.combine(&coeffs);
    let (_, incls, _) = Module::direct_sum_with_maps(x.algebra(), &[p.module(), y]);
    let minus_one = f.neg(&f.one());
    let into_sum =
        incls[0].compose_after(&incl).add(&incls[1].compose_after(&phi).scale(&minus_one));
    let (e, _) = into_sum.cokernel();
    Some(e)
}

fn push_unique<K: Field>(pool: &mut Vec<Module<K>>, m: Module<K>) {
    if m.is_zero() {
        return;
    }
    for existing in pool.iter() {
        if existing.dims() == m.dims() && is_isomorphic(existing, &m).is_some() {
            return;
        }
    }
    pool.push(m);
}

/// Split into indecomposable summands and add those; a module whose
/// decomposition stays inconclusive is added whole.
fn push_summands<K: Field>(pool: &mut Vec<Module<K>>, m: Module<K>) {
    if m.is_zero() {
        return;
    }
    match decompose(&m, 0) {
        Ok(dec) => {
            for (summand, _) in dec.summands {
                push_unique(pool, summand);
            }
        }
        Err(_) => push_unique(pool, m),
    }
}

/// Build the catalog over the given algebra. Deterministic in (spec, seed).
pub fn build_catalog<K: Field>(
    a: &Arc<FDAlgebra<K>>,
    spec: &CatalogSpec,
    seed: u64,
) -> Vec<Module<K>> {
    let nv = a.num_vertices();
    let aop = Arc::new(a.opposite());
    let mut pool: Vec<Module<K>> = Vec::new();

    for v in 0..nv {
        push_summands(&mut pool, Module::simple(a, v));
        push_summands(&mut pool, Module::projective(a, v));
        push_summands(&mut pool, Module::injective(a, v));
    }

    for v in 0..nv {
        let s = Module::simple(a, v);
        for d in 1..=spec.depth {
            push_summands(&mut pool, syzygy(&s, d));
        }
        // Cosyzygies through the duality with the opposite side.
        let ds = s.dual_onto(&aop);
        for d in 1..=spec.depth {
            push_summands(&mut pool, syzygy(&ds, d).dual_onto(a));
        }
        // Transpose translates in both directions.
        push_summands(&mut pool, transpose(&s, &aop).dual_onto(a));
        push_summands(&mut pool, transpose(&s.dual_onto(&aop), a));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = pool.clone();
    let mut made = 0;
    if !base.is_empty() {
        // Round-robin over ordered pairs until enough extensions exist.
        let mut attempts = 0;
        while made < spec.extensions && attempts < spec.extensions * 4 {
            let i = rng.gen_range(0..base.len());
            let j = rng.gen_range(0..base.len());
            attempts += 1;
            if let Some(e) = extension_middle(&base[i], &base[j], &mut rng) {
                push_summands(&mut pool, e);
                made += 1;
            }
        }
    }

    pool.sort_by(|x, y| {
        (x.total_dim(), x.dims()).cmp(&(y.total_dim(), y.dims()))
    });
    pool
}

/// The stacked module over (base algebra)·A3: one summand per interval
/// {1}, {1,2}, {1,2,3}, each carrying a copy of the base module with
/// identity transition maps. Over a field base this reassembles the regular
/// module; in general it raises the injective dimension of the base module
/// by exactly one.
pub fn stacked_interval_module<K: Field>(
    base_mod: &Module<K>,
) -> Result<(Arc<FDAlgebra<K>>, Module<K>)> {
    let gamma = base_mod.algebra();
    let f = base_mod.field().clone();
    let q = crate::algebra::Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            crate::algebra::Arrow { name: "a".into(), source: 0, target: 1 },
            crate::algebra::Arrow { name: "b".into(), source: 1, target: 2 },
        ],
    )?;
    let ta = Arc::new(crate::algebra::build_tensor_algebra(gamma, &q)?);
    let pres = ta.presentation().expect("tensor algebras carry a presentation").clone();
    let c = base_mod.total_dim();
    let n = 3usize;
    // Vertex v hosts the intervals {1..k} with k > v, stacked by increasing k.
    let dims: Vec<usize> = (0..n).map(|v| c * (n - v)).collect();

    // Action matrix of a base arrow on the base module, looked up through
    // the degree-one basis element with the arrow's label.
    let base_arrow_act = |name: &str| -> Result<Matrix<K>> {
        let galg = gamma.as_ref();
        for (i, b) in galg.basis().iter().enumerate() {
            if b.degree == 1 && b.label == name {
                return Ok(base_mod.act(i).clone());
            }
        }
        Err(Error::BadSetup(format!("base algebra has no degree-one element `{name}`")))
    };

    let mut arrow_mats = Vec::new();
    for arrow in &pres.quiver.arrows {
        if arrow.source == arrow.target {
            // A base loop x@v acts blockwise as x does on the base module.
            let v = arrow.source;
            let base_name = arrow
                .name
                .split_once('@')
                .map(|(x, _)| x)
                .ok_or_else(|| Error::BadSetup(format!("unexpected loop `{}`", arrow.name)))?;
            let x = base_arrow_act(base_name)?;
            let copies: Vec<&Matrix<K>> = (0..n - v).map(|_| &x).collect();
            arrow_mats.push(Matrix::block_diag(f.clone(), &copies));
        } else {
            // The A3 arrow v -> v+1 maps each shared interval identically
            // and misses the interval ending at v.
            let v = arrow.source;
            let rows = c * (n - v);
            let cols = c * (n - v - 1);
            arrow_mats.push(Matrix::from_fn(f.clone(), rows, cols, |i, j| {
                if i == j + c {
                    f.one()
                } else {
                    f.zero()
                }
            }));
        }
    }
    let m = Module::from_rep(ta.clone(), dims, arrow_mats)?;
    Ok((ta, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_path_algebra, Arrow, Path, Quiver, Relation};
    use crate::field::{PrimeField, Rationals};

    fn ka3() -> Arc<FDAlgebra<Rationals>> {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
            ],
        )
        .unwrap();
        Arc::new(build_path_algebra(Rationals, q, vec![]).unwrap())
    }

    #[test]
    fn catalog_of_a3_is_the_six_indecomposables() {
        let a = ka3();
        let cat = build_catalog(&a, &CatalogSpec::default(), 7);
        // The interval modules: three simples, P(2), P(3), I(2).
        assert_eq!(cat.len(), 6);
        let dims: Vec<Vec<usize>> = cat.iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(
            dims,
            vec![
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 1, 1],
                vec![1, 1, 0],
                vec![1, 1, 1],
            ]
        );
    }

    #[test]
    fn catalog_is_deterministic_in_the_seed() {
        let a = ka3();
        let c1 = build_catalog(&a, &CatalogSpec::default(), 42);
        let c2 = build_catalog(&a, &CatalogSpec::default(), 42);
        assert_eq!(c1.len(), c2.len());
        for (x, y) in c1.iter().zip(&c2) {
            assert_eq!(x.dims(), y.dims());
            assert!(is_isomorphic(x, y).is_some());
        }
    }

    #[test]
    fn selfinjective_catalog_reaches_both_indecomposables() {
        let f = PrimeField::new(2).unwrap();
        let q = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let rel = Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 0] })] };
        let alg = Arc::new(build_path_algebra(f, q, vec![rel]).unwrap());
        let cat = build_catalog(&alg, &CatalogSpec::default(), 3);
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].total_dim(), 1);
        assert_eq!(cat[1].total_dim(), 2);
    }

    #[test]
    fn extensions_produce_genuinely_new_modules() {
        let a = ka3();
        // With no extensions the transpose/syzygy closure of A3 already
        // finds everything, so assert the extension path alone can build
        // P(2) from S(2) by S(1).
        let s2 = Module::simple(&a, 1);
        let s1 = Module::simple(&a, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut found = false;
        for _ in 0..8 {
            if let Some(e) = extension_middle(&s2, &s1, &mut rng) {
                assert_eq!(e.total_dim(), 2);
                if is_isomorphic(&e, &Module::projective(&a, 1)).is_some() {
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn stacked_module_over_a_field_base_is_the_regular_module() {
        let q = Quiver::new(vec!["*".into()], vec![]).unwrap();
        let gamma = Arc::new(build_path_algebra(Rationals, q, vec![]).unwrap());
        let base = Module::regular(&gamma);
        let (ta, m) = stacked_interval_module(&base).unwrap();
        assert_eq!(m.dims(), &[3, 2, 1]);
        assert!(is_isomorphic(&m, &Module::regular(&ta)).is_some());
        assert_eq!(crate::homology::injective_dimension(&m, 10), crate::homology::Dim::Exactly(1));
    }

    #[test]
    fn stacked_module_over_the_selfinjective_base() {
        let f = PrimeField::new(2).unwrap();
        let q = Quiver::new(
            vec!["*".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let rel = Relation { terms: vec![(f.one(), Path { source: 0, arrows: vec![0, 0] })] };
        let gamma = Arc::new(build_path_algebra(f, q, vec![rel]).unwrap());
        let base = Module::regular(&gamma);
        let (ta, m) = stacked_interval_module(&base).unwrap();
        assert_eq!(ta.dim(), 12);
        assert_eq!(m.dims(), &[6, 4, 2]);
        assert_eq!(crate::homology::injective_dimension(&m, 12), crate::homology::Dim::Exactly(1));
    }

    #[test]
    fn spec_parsing_accepts_partial_keys() {
        assert_eq!(parse_catalog_spec("").unwrap(), CatalogSpec::default());
        assert_eq!(
            parse_catalog_spec("depth=2").unwrap(),
            CatalogSpec { depth: 2, extensions: 8 }
        );
        assert_eq!(
            parse_catalog_spec("extensions=50,depth=3").unwrap(),
            CatalogSpec { depth: 3, extensions: 50 }
        );
        assert!(parse_catalog_spec("bogus=1").is_err());
        assert!(parse_catalog_spec("depth=x").is_err());
    }
}
