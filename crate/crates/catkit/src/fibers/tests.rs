use super::*;
use crate::base::BaseKind;
use crate::comodule::{free_grading, GradedVCat};
use crate::diagram::diagonal;
use crate::fixtures;
use crate::grothendieck::{grothendieck, grothendieck_lax};
use crate::vcat::unit_vcat;

fn tables_equal_up_to_object_labels(a: &VCat, b: &VCat) -> bool {
    if a.n_objects() != b.n_objects() {
        return false;
    }
    let n = a.n_objects();
    for x in 0..n {
        for y in 0..n {
            if a.hom(x, y) != b.hom(x, y) {
                return false;
            }
            for z in 0..n {
                if a.comp(x, y, z) != b.comp(x, y, z) {
                    return false;
                }
            }
        }
        if a.id(x) != b.id(x) {
            return false;
        }
    }
    true
}

#[test]
fn strict_fiber_of_free_grading() {
    for kind in [BaseKind::FinSet, BaseKind::FinVect { prime: 2 }] {
        let g = free_grading(kind, &fixtures::arrow_category());
        let f = strict_fiber(&g, 0).unwrap();
        assert_eq!(f.cat.n_objects(), 1);
        assert_eq!(f.cat.hom(0, 0).size(), 1); // spanned by 1_i
        assert!(f.cat.validate().passed());
    }
}

#[test]
fn strict_fiber_reconstructs_the_diagram() {
    let x = fixtures::z2_on_z3();
    let gr = grothendieck(&x).unwrap();
    let f = strict_fiber(&gr.graded, 0).unwrap();
    assert!(tables_equal_up_to_object_labels(&f.cat, &x.on_obj[0]));
}

#[test]
fn empty_strict_fiber() {
    // a one-object category of degree i over the arrow category: the
    // fiber over j is empty
    let g = fixtures::one_object_graded_over_arrow();
    let f = strict_fiber(&g, 1).unwrap();
    assert_eq!(f.cat.n_objects(), 0);
    assert!(f.cat.validate().passed());
}

#[test]
fn comma_fiber_object_count() {
    let g = fixtures::f2_z2_graded();
    let f = left_comma_fiber(&g, 0).unwrap();
    // Σ_e |Mor(p(e), ∗)| = 1·2
    assert_eq!(f.cat.n_objects(), 2);
    assert!(f.cat.validate().passed());
    let fr = right_comma_fiber(&g, 0).unwrap();
    assert_eq!(fr.cat.n_objects(), 2);
    assert!(fr.cat.validate().passed());
}

#[test]
fn smash_product_dimensions() {
    // for A = F_2[Z/2] with its canonical grading, the comma fiber hom
    // ((x,g),(y,h)) has the dimension of A^{h⁻¹g}(x,y)
    let g = fixtures::f2_z2_graded();
    let f = left_comma_fiber(&g, 0).unwrap();
    for (a, &(_, u)) in f.objects.iter().enumerate() {
        for (b, &(_, v)) in f.objects.iter().enumerate() {
            // components w with v∘w = u, i.e. w = v⁻¹u; each has dim 1
            let _ = (u, v);
            assert_eq!(f.cat.hom(a, b).size(), 1);
        }
    }
}

#[test]
fn equalizer_and_pullback_presentations_agree() {
    let fixtures_set: Vec<GradedVCat> = vec![
        fixtures::f2_z2_graded(),
        free_grading(BaseKind::FinSet, &fixtures::arrow_category()),
        free_grading(BaseKind::FinVect { prime: 3 }, &fixtures::path2_category()),
        grothendieck(&fixtures::z2_on_z3()).unwrap().graded,
    ];
    for g in &fixtures_set {
        for i in 0..g.index.n_objects() {
            for side in [CommaSide::Left, CommaSide::Right] {
                let f = comma_fiber(g, i, side).unwrap();
                for (a, &oa) in f.objects.iter().enumerate() {
                    for (b, &ob) in f.objects.iter().enumerate() {
                        let (p_obj, p_incl) =
                            comma_hom_via_pullback(g, i, side, oa, ob).unwrap();
                        assert_eq!(&p_obj, f.cat.hom(a, b));
                        assert_eq!(p_incl, f.inclusions[a * f.objects.len() + b]);
                    }
                }
            }
        }
    }
}

#[test]
fn gamma_left_is_strict_and_functorial() {
    let g = fixtures::f2_z2_graded();
    let d = gamma_left(&g).unwrap();
    assert!(d.is_strict());
    assert!(d.validate().passed());
    // the action permutes objects (x,g) ↦ (x,hg)
    let f = &d.on_mor[1];
    assert_eq!(f.on_obj(0), 1);
    assert_eq!(f.on_obj(1), 0);
}

#[test]
fn gamma_right_is_strict() {
    let g = fixtures::f2_z2_graded();
    let d = gamma_right(&g).unwrap();
    assert!(d.is_strict());
    assert!(d.validate().passed());
}

#[test]
fn gamma_on_identity_morphism() {
    let g = fixtures::f2_z2_graded();
    let id = GradedMorphism::identity(&g);
    let t = gamma_on_morphism(&id).unwrap();
    let expect = LeftTransf::identity(&gamma_left(&g).unwrap());
    assert_eq!(t.components, expect.components);
    assert!(t.validate().passed());
}

#[test]
fn gamma_functorial_on_morphisms() {
    let g = grothendieck(&fixtures::z2_on_z3()).unwrap().graded;
    let m = crate::grothendieck::gr_on_morphism(&fixtures::z3_inversion_transf()).unwrap();
    let composite = m.compose(&m).unwrap();
    let lhs = gamma_on_morphism(&composite).unwrap();
    let rhs_a = gamma_on_morphism(&m).unwrap();
    let rhs = rhs_a.compose(&rhs_a).unwrap();
    assert_eq!(lhs.components, rhs.components);
    assert!(lhs.validate().passed());
    let _ = g;
}

#[test]
fn gamma_on_2morphism_validates() {
    let tm = fixtures::z3_transf_morphism();
    let xi = crate::grothendieck::gr_on_2morphism(&tm).unwrap();
    let out = gamma_on_2morphism(&xi).unwrap();
    assert!(out.validate().passed());
}

#[test]
fn comparison_functors_fully_faithful_onto_identity_components() {
    let g = grothendieck(&fixtures::z2_on_z3()).unwrap().graded;
    for i in 0..g.index.n_objects() {
        for comparison in [comparison_i(&g, i).unwrap(), comparison_j(&g, i).unwrap()] {
            assert!(comparison.validate().passed());
            let fiber = strict_fiber(&g, i).unwrap();
            for a in 0..fiber.cat.n_objects() {
                for b in 0..fiber.cat.n_objects() {
                    // the hom map is an isomorphism onto the comma hom
                    assert!(comparison.on_hom(a, b).is_iso());
                }
            }
        }
    }
}

#[test]
fn empty_fiber_empty_comparison() {
    let g = fixtures::one_object_graded_over_arrow();
    let c = comparison_i(&g, 1).unwrap();
    assert_eq!(c.dom.n_objects(), 0);
    assert!(c.validate().passed());
}

#[test]
fn canonical_cofibered_structure_verifies_and_is_cofibered() {
    let x = fixtures::z2_on_z3();
    let gr = grothendieck(&x).unwrap();
    let s = canonical_cofibered_structure(&gr, &x).unwrap();
    let out = verify_cofibered_structure(&gr.graded, &s).unwrap();
    assert!(out.report.passed(), "{}", out.report);
    assert!(out.iso, "the canonical structure on a glued diagram is cofibered");
}

#[test]
fn trivial_grading_identity_adjoint() {
    // terminal index: the comma fiber is the category itself and the
    // identity functor is the adjoint
    let a = fixtures::zn_as_vcat(2);
    let x = diagonal(&a, &fixtures::terminal_category());
    let gr = grothendieck(&x).unwrap();
    let s = canonical_cofibered_structure(&gr, &x).unwrap();
    let out = verify_cofibered_structure(&gr.graded, &s).unwrap();
    assert!(out.report.passed());
    assert!(out.iso);
}

#[test]
fn wrong_counit_fails_triangle() {
    let x = fixtures::z2_on_z3();
    let gr = grothendieck(&x).unwrap();
    let mut s = canonical_cofibered_structure(&gr, &x).unwrap();
    // replace the counit component with a non-identity element
    let fiber = strict_fiber(&gr.graded, 0).unwrap();
    let bad_elem = crate::base::basis_elem(fiber.cat.hom(0, 0), 1);
    let e0 = &s.entries[0];
    let bad = VNatTrans::new(e0.counit.dom.clone(), e0.counit.cod.clone(), |_| {
        bad_elem.clone()
    })
    .unwrap();
    s.entries[0].counit = bad;
    let out = verify_cofibered_structure(&gr.graded, &s).unwrap();
    assert!(!out.report.passed());
    assert!(out.report.failure.unwrap().law.contains("triangle"));
}

#[test]
fn gamma_cof_coherent_and_reconstructs() {
    let x = fixtures::z2_on_z3();
    let gr = grothendieck(&x).unwrap();
    let s = canonical_cofibered_structure(&gr, &x).unwrap();
    let cof = gamma_cof(&gr.graded, &s).unwrap();
    let report = cof.validate();
    assert!(report.passed(), "{report}");
    // θ components are isomorphisms (cofibered case)
    for theta in cof.comp.iter().flatten() {
        let home = &theta.dom.cod;
        for z in 0..theta.dom.dom.n_objects() {
            let (a, b) = (theta.dom.on_obj(z), theta.cod.on_obj(z));
            assert!(home.invert_elem(a, b, theta.component(z)).is_some());
        }
    }
    // Γ_cof(μ)(i) is the strict fiber, table-isomorphic to X(i)
    assert!(tables_equal_up_to_object_labels(&cof.on_obj[0], &x.on_obj[0]));
}

#[test]
fn comparison_transformations_validate() {
    let x = fixtures::z2_on_z3();
    let gr = grothendieck(&x).unwrap();
    let s = canonical_cofibered_structure(&gr, &x).unwrap();
    let out = comparison_transformations(&gr.graded, &s, true).unwrap();
    assert!(out.i.validate().passed());
    assert!(out.s.validate().passed());
    let s_left = out.s_left.expect("counits are isomorphisms on this fixture");
    assert!(s_left.validate().passed());
    // i then s composes to something isomorphic to the identity: on each
    // fiber the composite s_i ∘ i_i is connected to 1 by the invertible ε
    for (i, entry) in s.entries.iter().enumerate() {
        let home = &entry.counit.dom.cod;
        for z in 0..entry.counit.dom.dom.n_objects() {
            let (a, b) = (entry.counit.dom.on_obj(z), entry.counit.cod.on_obj(z));
            assert!(home.invert_elem(a, b, entry.counit.component(z)).is_some());
        }
        let _ = i;
    }
}

#[test]
fn comparison_transformations_empty_fibers() {
    // an empty graded category: all fibers are empty and the comparison
    // transformations relate empty diagrams
    let g = fixtures::empty_graded(&fixtures::arrow_category());
    let s = fixtures::trivial_cofibered_structure(&g).unwrap();
    let out = verify_cofibered_structure(&g, &s).unwrap();
    assert!(out.report.passed(), "{}", out.report);
    let transfs = comparison_transformations(&g, &s, true).unwrap();
    assert!(transfs.i.validate().passed());
    assert!(transfs.s.validate().passed());
    assert!(transfs.s_left.unwrap().validate().passed());
}

#[test]
fn search_adjoint_finds_canonical() {
    // tiny glued diagram over the arrow category
    let one = unit_vcat(BaseKind::FinSet);
    let x = diagonal(&one, &fixtures::arrow_category());
    let gr = grothendieck(&x).unwrap();
    for i in 0..2 {
        let found = search_adjoint(&gr.graded, i, 10_000).unwrap();
        let entry = found.expect("adjoint exists for glued gradings");
        let out = verify_cofibered_structure(
            &gr.graded,
            &CofiberedStructure {
                kind: StructureKind::Precofibered,
                entries: {
                    let canonical = canonical_cofibered_structure(&gr, &x).unwrap();
                    let mut entries = canonical.entries;
                    entries[i] = entry.clone();
                    entries
                },
            },
        )
        .unwrap();
        assert!(out.report.passed());
        // matches the canonical construction
        let canonical = canonical_cofibered_structure(&gr, &x).unwrap();
        assert_eq!(entry.adjoint, canonical.entries[i].adjoint);
    }
}

#[test]
fn search_adjoint_none_when_fiber_empty() {
    let g = fixtures::one_object_graded_over_arrow();
    // fiber over j empty, comma fiber nonempty: no functor exists
    let found = search_adjoint(&g, 1, 10_000).unwrap();
    assert!(found.is_none());
}

#[test]
fn search_adjoint_terminal_identity() {
    let one = unit_vcat(BaseKind::FinSet);
    let x = diagonal(&one, &fixtures::terminal_category());
    let gr = grothendieck(&x).unwrap();
    let found = search_adjoint(&gr.graded, 0, 10_000).unwrap().unwrap();
    assert!(found.adjoint.on_hom(0, 0).is_iso());
}

#[test]
fn canonical_prefibered_and_gamma_fib() {
    let x = fixtures::z2_on_z3();
    let lax = fixtures::op_strict_diagram(&x);
    let gr = grothendieck_lax(&lax).unwrap();
    let s = canonical_prefibered_structure(&gr, &lax).unwrap();
    let out = verify_cofibered_structure(&gr.graded, &s).unwrap();
    assert!(out.report.passed(), "{}", out.report);
    assert!(out.iso);
    let fib = gamma_fib(&gr.graded, &s).unwrap();
    let report = fib.validate();
    assert!(report.passed(), "{report}");
    // Γ_fib(μ)(i) is the strict fiber ≅ X(i)^op
    assert!(tables_equal_up_to_object_labels(
        &fib.on_obj[0],
        &lax.on_obj[0]
    ));
}

#[test]
fn gamma_fib_on_morphism_identity() {
    let x = fixtures::z2_on_z3();
    let lax = fixtures::op_strict_diagram(&x);
    let gr = grothendieck_lax(&lax).unwrap();
    let s = canonical_prefibered_structure(&gr, &lax).unwrap();
    let id = fixtures::right_identity_graded_morphism(&gr.graded);
    let t = gamma_fib_on_morphism(&id, &s, &s).unwrap();
    let report = t.validate();
    assert!(report.passed(), "{report}");
    // Γ_fib preserves the composition of identities strictly
    assert!(gamma_fib_composition_strict(&id, &id, &s, &s, &s).unwrap());
}
