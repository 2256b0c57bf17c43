//! Regenerates the shipped workbench fixtures from first principles:
//! `cargo run -p cotilt-cli --example regen_fixtures`.
//!
//! Fixtures stay byte-stable because the serializer is deterministic; tests
//! assert that the files on disk parse back to these constructions.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use cotilt_cli::format::{serialize, WorkbenchFile};
use cotilt_core::algebra::{build_path_algebra, Arrow, FDAlgebra, Path as QPath, Quiver, Relation};
use cotilt_core::catalog::stacked_interval_module;
use cotilt_core::field::{Field, PrimeField, Rationals};
use cotilt_core::module::Module;

fn a3_quiver() -> Quiver {
    Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            Arrow { name: "a".into(), source: 0, target: 1 },
            Arrow { name: "b".into(), source: 1, target: 2 },
        ],
    )
    .unwrap()
}

fn dual_numbers<K: Field>(field: K) -> Arc<FDAlgebra<K>> {
    let one = field.one();
    let q = Quiver::new(
        vec!["*".into()],
        vec![Arrow { name: "x".into(), source: 0, target: 0 }],
    )
    .unwrap();
    let rel = Relation { terms: vec![(one, QPath { source: 0, arrows: vec![0, 0] })] };
    Arc::new(build_path_algebra(field, q, vec![rel]).unwrap())
}

/// The linear quiver with the three summands named and C = P1 + P3 + S3 as
/// the designated candidate.
fn ka3_file<K: Field>(field: K) -> WorkbenchFile<K> {
    let a = Arc::new(build_path_algebra(field, a3_quiver(), vec![]).unwrap());
    WorkbenchFile {
        algebra: a.clone(),
        modules: vec![
            ("P1".into(), Module::projective(&a, 0)),
            ("P3".into(), Module::projective(&a, 2)),
            ("S3".into(), Module::simple(&a, 2)),
        ],
        bimodules: vec![("C".into(), "P1 + P3 + S3".into())],
        setups: vec![("main".into(), "C".into())],
    }
}

/// F_2[x]/(x^2): self-injective, so the regular module is the candidate.
fn dualnum_file() -> WorkbenchFile<PrimeField> {
    WorkbenchFile {
        algebra: dual_numbers(PrimeField::new(2).unwrap()),
        modules: vec![],
        bimodules: vec![],
        setups: vec![("main".into(), "R".into())],
    }
}

/// The tensor algebra of F_2[x]/(x^2) with the two-vertex linear quiver.
fn gamma_a2_file() -> WorkbenchFile<PrimeField> {
    let base = dual_numbers(PrimeField::new(2).unwrap());
    let q = Quiver::new(
        vec!["1".into(), "2".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 1 }],
    )
    .unwrap();
    let a = Arc::new(cotilt_core::algebra::build_tensor_algebra(base.as_ref(), &q).unwrap());
    WorkbenchFile {
        algebra: a,
        modules: vec![],
        bimodules: vec![],
        setups: vec![("main".into(), "R".into())],
    }
}

/// The stacked-interval candidate over the tensor algebra of F_2[x]/(x^2)
/// with the three-vertex linear quiver.
fn rq_a3_file() -> WorkbenchFile<PrimeField> {
    let base = dual_numbers(PrimeField::new(2).unwrap());
    let (ta, c) = stacked_interval_module(&Module::regular(&base)).unwrap();
    WorkbenchFile {
        algebra: ta,
        modules: vec![("C".into(), c)],
        bimodules: vec![("C".into(), "C".into())],
        setups: vec![("main".into(), "C".into())],
    }
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).unwrap();
        println!("wrote {}", path.display());
    };
    write("ka3_f2.wb", serialize(&ka3_file(PrimeField::new(2).unwrap())));
    write("ka3_q.wb", serialize(&ka3_file(Rationals)));
    write("dualnum_f2.wb", serialize(&dualnum_file()));
    write("gamma_a2_f2.wb", serialize(&gamma_a2_file()));
    write("rq_a3_dualnum.wb", serialize(&rq_a3_file()));
}
