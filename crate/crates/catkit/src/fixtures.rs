//! Shared example constructions: small index categories, group algebras,
//! group actions, and seeded random diagram generators. Used heavily by
//! the test suites and handy for experimenting from the CLI.

pub mod random;

use crate::base::{self, BaseKind, BaseMorphism, BaseObject, Decomposition};
use crate::comodule::GradedVCat;
use crate::diagram::{strict_diagram, LaxDiagram, LeftTransf, OplaxDiagram, TransfMorphism};
use crate::vcat::{free_vcat, opposite_vcat, IndexCat, VCat, VFunctor, VNatTrans};

/// The terminal category: one object, one (identity) morphism.
pub fn terminal_category() -> IndexCat {
    IndexCat::new(
        vec!["*".into()],
        vec![("1".into(), "*".into(), "*".into())],
        vec![(("1".into(), "1".into()), "1".into())],
        vec![("*".into(), "1".into())],
    )
    .unwrap()
}

/// The arrow category `i → j`.
pub fn arrow_category() -> IndexCat {
    IndexCat::new(
        vec!["i".into(), "j".into()],
        vec![
            ("1i".into(), "i".into(), "i".into()),
            ("1j".into(), "j".into(), "j".into()),
            ("u".into(), "i".into(), "j".into()),
        ],
        vec![
            (("1i".into(), "1i".into()), "1i".into()),
            (("1j".into(), "1j".into()), "1j".into()),
            (("u".into(), "1i".into()), "u".into()),
            (("1j".into(), "u".into()), "u".into()),
        ],
        vec![("i".into(), "1i".into()), ("j".into(), "1j".into())],
    )
    .unwrap()
}

/// A composable pair `i → j → k` with the composite filled in.
pub fn path2_category() -> IndexCat {
    IndexCat::new(
        vec!["i".into(), "j".into(), "k".into()],
        vec![
            ("1i".into(), "i".into(), "i".into()),
            ("1j".into(), "j".into(), "j".into()),
            ("1k".into(), "k".into(), "k".into()),
            ("u".into(), "i".into(), "j".into()),
            ("v".into(), "j".into(), "k".into()),
            ("w".into(), "i".into(), "k".into()),
        ],
        vec![
            (("1i".into(), "1i".into()), "1i".into()),
            (("1j".into(), "1j".into()), "1j".into()),
            (("1k".into(), "1k".into()), "1k".into()),
            (("u".into(), "1i".into()), "u".into()),
            (("1j".into(), "u".into()), "u".into()),
            (("v".into(), "1j".into()), "v".into()),
            (("1k".into(), "v".into()), "v".into()),
            (("w".into(), "1i".into()), "w".into()),
            (("1k".into(), "w".into()), "w".into()),
            (("v".into(), "u".into()), "w".into()),
        ],
        vec![
            ("i".into(), "1i".into()),
            ("j".into(), "1j".into()),
            ("k".into(), "1k".into()),
        ],
    )
    .unwrap()
}

/// A discrete category on `n` objects.
pub fn discrete_category(n: usize) -> IndexCat {
    let objects: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let morphisms = objects
        .iter()
        .map(|o| (format!("1{o}"), o.clone(), o.clone()))
        .collect();
    let comp = objects
        .iter()
        .map(|o| ((format!("1{o}"), format!("1{o}")), format!("1{o}")))
        .collect();
    let ids = objects.iter().map(|o| (o.clone(), format!("1{o}"))).collect();
    IndexCat::new(objects, morphisms, comp, ids).unwrap()
}

/// Two parallel arrows `i ⇉ j`.
pub fn parallel_pair_category() -> IndexCat {
    IndexCat::new(
        vec!["i".into(), "j".into()],
        vec![
            ("1i".into(), "i".into(), "i".into()),
            ("1j".into(), "j".into(), "j".into()),
            ("u".into(), "i".into(), "j".into()),
            ("v".into(), "i".into(), "j".into()),
        ],
        vec![
            (("1i".into(), "1i".into()), "1i".into()),
            (("1j".into(), "1j".into()), "1j".into()),
            (("u".into(), "1i".into()), "u".into()),
            (("1j".into(), "u".into()), "u".into()),
            (("v".into(), "1i".into()), "v".into()),
            (("1j".into(), "v".into()), "v".into()),
        ],
        vec![("i".into(), "1i".into()), ("j".into(), "1j".into())],
    )
    .unwrap()
}

/// A span `j ← i → k`.
pub fn span_category() -> IndexCat {
    IndexCat::new(
        vec!["i".into(), "j".into(), "k".into()],
        vec![
            ("1i".into(), "i".into(), "i".into()),
            ("1j".into(), "j".into(), "j".into()),
            ("1k".into(), "k".into(), "k".into()),
            ("u".into(), "i".into(), "j".into()),
            ("v".into(), "i".into(), "k".into()),
        ],
        vec![
            (("1i".into(), "1i".into()), "1i".into()),
            (("1j".into(), "1j".into()), "1j".into()),
            (("1k".into(), "1k".into()), "1k".into()),
            (("u".into(), "1i".into()), "u".into()),
            (("1j".into(), "u".into()), "u".into()),
            (("v".into(), "1i".into()), "v".into()),
            (("1k".into(), "v".into()), "v".into()),
        ],
        vec![
            ("i".into(), "1i".into()),
            ("j".into(), "1j".into()),
            ("k".into(), "1k".into()),
        ],
    )
    .unwrap()
}

/// The cyclic group Z/n as a one-object category with morphisms
/// `g0 = e, g1, ..., g{n-1}` and `gi ∘ gj = g{(i+j) mod n}`.
pub fn cyclic_group_cat(n: usize) -> IndexCat {
    let name = |i: usize| format!("g{i}");
    let objects = vec!["*".to_string()];
    let morphisms = (0..n)
        .map(|i| (name(i), "*".to_string(), "*".to_string()))
        .collect();
    let comp = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((name(i), name(j)), name((i + j) % n))))
        .collect();
    IndexCat::new(objects, morphisms, comp, vec![("*".into(), "g0".into())]).unwrap()
}

/// The group algebra `F_p[Z/n]` as a one-object enriched category.
pub fn group_algebra(p: u32, n: usize) -> VCat {
    free_vcat(BaseKind::FinVect { prime: p }, &cyclic_group_cat(n))
}

/// `F_2[Z/2]` with its canonical Z/2-grading: hom components spanned by
/// the group elements.
pub fn f2_z2_graded() -> GradedVCat {
    crate::comodule::free_grading(BaseKind::FinVect { prime: 2 }, &cyclic_group_cat(2))
}

/// The one-object finset category carrying the group Z/n: same shape as
/// the index category but realized as an enriched category over finset.
pub fn zn_as_vcat(n: usize) -> VCat {
    free_vcat(BaseKind::FinSet, &cyclic_group_cat(n))
}

/// The inversion action of Z/2 on the group Z/3 (as a one-object finset
/// category): the generator acts by `g ↦ g⁻¹`.
pub fn z3_inversion_functor() -> VFunctor {
    let z3 = zn_as_vcat(3);
    VFunctor::new(z3.clone(), z3.clone(), vec![0], |_, _| {
        let hom = z3.hom(0, 0);
        BaseMorphism::from_position_map(hom.clone(), hom.clone(), vec![0, 2, 1])
    })
    .unwrap()
}

/// Make a single-part decomposition (trivial grading helper).
pub fn single_part_decomposition(ambient: &BaseObject, tag: &str) -> Decomposition {
    Decomposition {
        ambient: ambient.clone(),
        tags: vec![tag.to_string()],
        parts: vec![ambient.clone()],
        injections: vec![BaseMorphism::identity(ambient)],
    }
}

/// The action of Z/2 on Z/3 by inversion, as a strict diagram of finset
/// categories. Its Grothendieck construction is the symmetric group S₃.
pub fn z2_on_z3() -> OplaxDiagram {
    let index = cyclic_group_cat(2);
    let a = zn_as_vcat(3);
    let id = VFunctor::identity(&a);
    strict_diagram(&index, vec![a], vec![id, z3_inversion_functor()]).unwrap()
}

/// A one-object finset category graded over the arrow category with its
/// object sitting in degree `i`: the strict fiber over `j` is empty while
/// the comma fiber over `j` is not.
pub fn one_object_graded_over_arrow() -> GradedVCat {
    let cat = crate::vcat::unit_vcat(BaseKind::FinSet);
    let index = arrow_category();
    let dec = vec![single_part_decomposition(cat.hom(0, 0), "1i")];
    GradedVCat::new(cat, index, vec![0], dec).unwrap()
}

/// The empty category graded over an index category: every fiber of every
/// flavor is empty.
pub fn empty_graded(index: &IndexCat) -> GradedVCat {
    let cat = VCat::build(
        BaseKind::FinSet,
        vec![],
        |_, _| unreachable!(),
        |_, _, _| unreachable!(),
        |_| unreachable!(),
    )
    .unwrap();
    GradedVCat::new(cat, index.clone(), vec![], vec![]).unwrap()
}

/// A precofibered structure on an empty grading: all adjoints are the
/// empty functor.
pub fn trivial_cofibered_structure(
    g: &GradedVCat,
) -> crate::error::Result<crate::fibers::CofiberedStructure> {
    use crate::fibers::{comparison_i, left_comma_fiber, strict_fiber, AdjointEntry, CofiberedStructure, StructureKind};
    let mut entries = Vec::new();
    for i in 0..g.index.n_objects() {
        let fiber = strict_fiber(g, i)?;
        let comma = left_comma_fiber(g, i)?;
        let comparison = comparison_i(g, i)?;
        let adjoint = VFunctor::new(comma.cat.clone(), fiber.cat.clone(), vec![], |_, _| {
            unreachable!()
        })?;
        let unit = VNatTrans::new(
            VFunctor::identity(&comma.cat),
            comparison.compose(&adjoint)?,
            |_| unreachable!(),
        )?;
        let counit = VNatTrans::new(
            adjoint.compose(&comparison)?,
            VFunctor::identity(&fiber.cat),
            |_| unreachable!(),
        )?;
        entries.push(AdjointEntry {
            adjoint,
            unit,
            counit,
        });
    }
    Ok(CofiberedStructure {
        kind: StructureKind::Precofibered,
        entries,
    })
}

/// The identity of a grading packaged as a right morphism.
pub fn right_identity_graded_morphism(g: &GradedVCat) -> crate::comodule::GradedMorphism {
    let deg = (0..g.cat.n_objects())
        .map(|x| g.index.identity(g.degree_of(x)))
        .collect();
    crate::comodule::GradedMorphism::new(
        g.clone(),
        g.clone(),
        crate::comodule::Variance::Right,
        VFunctor::identity(&g.cat),
        deg,
    )
    .unwrap()
}

/// Reinterpret a strict diagram as a lax diagram on the opposite index,
/// applying `op` to every fiber category and every functor. This is the
/// dualization core shared by the lax-side tests.
pub fn op_strict_diagram(x: &OplaxDiagram) -> LaxDiagram {
    assert!(x.is_strict(), "op dualization is wired for strict diagrams");
    let index = x.index.opposite();
    let on_obj: Vec<VCat> = x.on_obj.iter().map(opposite_vcat).collect();
    let on_mor: Vec<VFunctor> = x
        .on_mor
        .iter()
        .map(|f| {
            let dom_i = x
                .on_obj
                .iter()
                .position(|c| *c == f.dom)
                .expect("fiber category");
            let cod_i = x.on_obj.iter().position(|c| *c == f.cod).unwrap();
            VFunctor::new(
                on_obj[dom_i].clone(),
                on_obj[cod_i].clone(),
                f.obj_map.clone(),
                |a, b| f.on_hom(b, a).clone(),
            )
            .unwrap()
        })
        .collect();
    let unit: Vec<VNatTrans> = (0..index.n_objects())
        .map(|i| VNatTrans::identity(&on_mor[index.identity(i)]))
        .collect();
    let n = index.n_morphisms();
    let mut comp = vec![None; n * n];
    for v in 0..n {
        for u in 0..n {
            if index.composable(v, u) {
                comp[v * n + u] = Some(VNatTrans::identity(&on_mor[v].compose(&on_mor[u]).unwrap()));
            }
        }
    }
    LaxDiagram::new(index, on_obj, on_mor, unit, comp).unwrap()
}

/// The inversion automorphism of Z/3 as a left transformation from the
/// Z/2-action diagram to itself (it commutes strictly with the action).
pub fn z3_inversion_transf() -> LeftTransf {
    let x = z2_on_z3();
    let f = z3_inversion_functor();
    let squares = (0..x.index.n_morphisms())
        .map(|u| VNatTrans::identity(&x.on_mor[u].compose(&f).unwrap()))
        .collect();
    LeftTransf::new(x.clone(), x.clone(), vec![f], squares).unwrap()
}

/// A left transformation with identity components but a nontrivial square
/// family on the Z/2-action diagram: `φ(g0) = e`, `φ(g1) = g2`.
pub fn z3_twisted_transf() -> LeftTransf {
    let x = z2_on_z3();
    let a = x.on_obj[0].clone();
    let id = VFunctor::identity(&a);
    let squares = vec![
        VNatTrans::identity(&x.on_mor[0]),
        VNatTrans::new(
            x.on_mor[1].compose(&id).unwrap(),
            id.compose(&x.on_mor[1]).unwrap(),
            |_| base::basis_elem(a.hom(0, 0), 2),
        )
        .unwrap(),
    ];
    LeftTransf::new(x.clone(), x.clone(), vec![id], squares).unwrap()
}

/// A nontrivial morphism of transformations: component `g1` from the
/// identity transformation to the twisted one.
pub fn z3_transf_morphism() -> TransfMorphism {
    let x = z2_on_z3();
    let id_t = LeftTransf::identity(&x);
    let twisted = z3_twisted_transf();
    let a = x.on_obj[0].clone();
    let comp = VNatTrans::new(
        id_t.components[0].clone(),
        twisted.components[0].clone(),
        |_| base::basis_elem(a.hom(0, 0), 1),
    )
    .unwrap();
    TransfMorphism::new(id_t, twisted, vec![comp]).unwrap()
}

/// A non-strict (and non-unital) oplax diagram on the terminal category:
/// the identity endofunctor of `F_2[Z/2]` with unit and composition cells
/// given by the central invertible element `g`. All coherence squares
/// close because `g² = e`.
pub fn twisted_terminal_diagram() -> OplaxDiagram {
    let index = terminal_category();
    let a = group_algebra(2, 2);
    let id = VFunctor::identity(&a);
    let g = base::basis_elem(a.hom(0, 0), 1);
    let eta = VNatTrans::new(id.clone(), id.clone(), |_| g.clone()).unwrap();
    let theta = VNatTrans::new(id.clone(), id.compose(&id).unwrap(), |_| g.clone()).unwrap();
    OplaxDiagram::new(index, vec![a], vec![id], vec![eta], vec![Some(theta)]).unwrap()
}
