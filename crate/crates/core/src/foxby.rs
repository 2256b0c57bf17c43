//! Membership tests for the two module classes attached to a bimodule T:
//! the Auslander class (right S-modules N with vanishing Tor against T,
//! vanishing Ext out of T on N tensor T, and invertible unit N -> Hom(T, N
//! tensor T)) and the Bass class (right R-modules M with the mirror
//! conditions and counit Hom(T, M) tensor T -> M invertible).

use crate::bimodule::{hom_module, tensor_over, Bimodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{ext_vanishes_all, nu_map, theta_map, tor_vanishes_all, CertStatus};
use crate::module::{same_algebra, Module, ModuleMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoxbyClass {
    Auslander,
    Bass,
}

impl std::fmt::Display for FoxbyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FoxbyClass::Auslander => write!(f, "Auslander"),
            FoxbyClass::Bass => write!(f, "Bass"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassMembership {
    pub class: FoxbyClass,
    pub tor_vanish: bool,
    pub tor_status: CertStatus,
    pub tor_witness: Option<usize>,
    pub ext_vanish: bool,
    pub ext_status: CertStatus,
    pub ext_witness: Option<usize>,
    pub unit_iso: bool,
    /// Refutations are exact; a positive verdict carries the caveat of
    /// `status`.
    pub member: Option<bool>,
    pub status: CertStatus,
}

fn assemble(
    class: FoxbyClass,
    tor: (bool, CertStatus, Option<usize>),
    ext: (bool, CertStatus, Option<usize>),
    unit_iso: bool,
) -> ClassMembership {
    let member = Some(tor.0 && ext.0 && unit_iso);
    ClassMembership {
        class,
        tor_vanish: tor.0,
        tor_status: tor.1,
        tor_witness: tor.2,
        ext_vanish: ext.0,
        ext_status: ext.1,
        ext_witness: ext.2,
        unit_iso,
        member,
        status: tor.1.merge(ext.1),
    }
}

/// Auslander-class test for a right S-module N.
pub fn auslander_member<K: Field>(
    n: &Module<K>,
    t: &Bimodule<K>,
    bound: usize,
) -> ClassMembership {
    assert!(same_algebra(n.algebra(), t.left_algebra()), "Auslander side takes S-modules");
    let tor = tor_vanishes_all(n, t, bound);
    let th = theta_map(n, t);
    let ext = ext_vanishes_all(t.module(), &th.tensor.module, bound);
    assemble(FoxbyClass::Auslander, tor, ext, th.map.is_iso())
}

/// Bass-class test for a right R-module M.
pub fn bass_member<K: Field>(m: &Module<K>, t: &Bimodule<K>, bound: usize) -> ClassMembership {
    assert!(same_algebra(m.algebra(), t.right_algebra()), "Bass side takes R-modules");
    let ext = ext_vanishes_all(t.module(), m, bound);
    let hm = hom_module(t, m);
    let tor = tor_vanishes_all(&hm.module, t, bound);
    let nu = nu_map(m, t);
    assemble(FoxbyClass::Bass, tor, ext, nu.map.is_iso())
}

pub fn class_member<K: Field>(
    x: &Module<K>,
    t: &Bimodule<K>,
    class: FoxbyClass,
    bound: usize,
) -> ClassMembership {
    match class {
        FoxbyClass::Auslander => auslander_member(x, t, bound),
        FoxbyClass::Bass => bass_member(x, t, bound),
    }
}

#[derive(Debug, Clone)]
pub struct RoundtripReport<K: Field> {
    pub start: ClassMembership,
    /// Hom(T, -) of a Bass-side module, or - tensor T of an Auslander-side
    /// module.
    pub image: Module<K>,
    pub image_membership: ClassMembership,
    /// The unit or counit returning to the start module is invertible.
    pub returned_iso: bool,
    pub status: CertStatus,
}

/// Carry a class member across to the other side and check that it lands in
/// the partner class and comes back isomorphically. Starting from a
/// non-member is an error rather than a report.
pub fn foxby_roundtrip<K: Field>(
    x: &Module<K>,
    t: &Bimodule<K>,
    class: FoxbyClass,
    bound: usize,
) -> Result<RoundtripReport<K>> {
    let start = class_member(x, t, class, bound);
    if start.member == Some(false) {
        return Err(Error::NotAMember(format!(
            "module {} is not in the {} class",
            x.dims_label(),
            class
        )));
    }
    let (image, image_membership) = match class {
        FoxbyClass::Bass => {
            let image = hom_module(t, x).module;
            let mem = auslander_member(&image, t, bound);
            (image, mem)
        }
        FoxbyClass::Auslander => {
            let image = tensor_over(x, t).module;
            let mem = bass_member(&image, t, bound);
            (image, mem)
        }
    };
    let returned_iso = start.unit_iso;
    let status = start.status.merge(image_membership.status);
    Ok(RoundtripReport { start, image, image_membership, returned_iso, status })
}

/// One hypothesis-conclusion instance of the closure property on a short
/// exact sequence: indices into (sub, middle, quotient).
#[derive(Debug, Clone)]
pub struct ClosureCase {
    pub hypotheses: [usize; 2],
    pub conclusion: usize,
    pub applied: bool,
    pub conclusion_holds: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct TwoOfThreeReport {
    pub memberships: [ClassMembership; 3],
    pub cases: Vec<ClosureCase>,
    pub applicable: bool,
    pub consistent: Option<bool>,
    pub status: CertStatus,
}

fn validate_ses<K: Field>(incl: &ModuleMap<K>, proj: &ModuleMap<K>) -> Result<()> {
    if incl.target() != proj.source() {
        return Err(Error::NotExact("the two maps do not share a middle module".into()));
    }
    if !incl.is_injective() {
        return Err(Error::NotExact("the first map is not injective".into()));
    }
    if !proj.is_surjective() {
        return Err(Error::NotExact("the second map is not surjective".into()));
    }
    if !proj.compose_after(incl).is_zero() {
        return Err(Error::NotExact("the composite is nonzero".into()));
    }
    if incl.source().total_dim() + proj.target().total_dim() != incl.target().total_dim() {
        return Err(Error::NotExact("the image of the first map is smaller than the kernel".into()));
    }
    Ok(())
}

/// Check the side-appropriate two-of-three closure of the class on a short
/// exact sequence 0 -> sub -> middle -> quotient -> 0. Both classes are
/// closed under extensions; the Auslander class additionally under kernels
/// of epimorphisms between members, the Bass class under cokernels of
/// monomorphisms. Only instances whose two hypothesis modules are members
/// get applied.
pub fn two_of_three<K: Field>(
    incl: &ModuleMap<K>,
    proj: &ModuleMap<K>,
    t: &Bimodule<K>,
    class: FoxbyClass,
    bound: usize,
) -> Result<TwoOfThreeReport> {
    validate_ses(incl, proj)?;
    let modules = [incl.source(), incl.target(), proj.target()];
    let memberships: [ClassMembership; 3] = [
        class_member(modules[0], t, class, bound),
        class_member(modules[1], t, class, bound),
        class_member(modules[2], t, class, bound),
    ];
    let configs: [([usize; 2], usize); 2] = match class {
        // Extensions, then kernels of epis between members.
        FoxbyClass::Auslander => [([0, 2], 1), ([1, 2], 0)],
        // Extensions, then cokernels of monos between members.
        FoxbyClass::Bass => [([0, 2], 1), ([0, 1], 2)],
    };
    let mut cases = Vec::new();
    for (hypotheses, conclusion) in configs {
        let applied = hypotheses.iter().all(|&i| memberships[i].member == Some(true));
        let conclusion_holds = if applied { memberships[conclusion].member } else { None };
        cases.push(ClosureCase { hypotheses, conclusion, applied, conclusion_holds });
    }
    let applicable = cases.iter().any(|c| c.applied);
    let consistent = if applicable {
        Some(cases.iter().all(|c| !c.applied || c.conclusion_holds == Some(true)))
    } else {
        None
    };
    let status = memberships.iter().map(|m| m.status).fold(CertStatus::Certified, CertStatus::merge);
    Ok(TwoOfThreeReport { memberships, cases, applicable, consistent, status })
}
