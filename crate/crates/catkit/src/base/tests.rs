use super::*;

fn f2() -> BaseKind {
    BaseKind::FinVect { prime: 2 }
}

fn f3() -> BaseKind {
    BaseKind::FinVect { prime: 3 }
}

#[test]
fn tensor_with_singleton() {
    let x = BaseObject::finset(vec!["a", "b"]);
    let y = BaseObject::finset(vec!["x"]);
    let t = tensor(&x, &y).unwrap();
    assert_eq!(t.labels(), &["(a,x)", "(b,x)"]);
}

#[test]
fn tensor_dims_multiply() {
    let x = BaseObject::finvect_dim(2, 2);
    let y = BaseObject::finvect_dim(2, 3);
    assert_eq!(tensor(&x, &y).unwrap().size(), 6);
}

#[test]
fn tensor_mor_of_identities_is_identity() {
    let x = BaseObject::finvect_dim(3, 2);
    let y = BaseObject::finvect_dim(3, 2);
    let t = tensor_mor(&BaseMorphism::identity(&x), &BaseMorphism::identity(&y)).unwrap();
    assert!(t.is_identity());

    let a = BaseObject::finset(vec!["a", "b"]);
    let t = tensor_mor(&BaseMorphism::identity(&a), &BaseMorphism::identity(&a)).unwrap();
    assert!(t.is_identity());
}

#[test]
fn mixed_realizations_rejected() {
    let x = BaseObject::finset(vec!["a"]);
    let y = BaseObject::finvect_dim(2, 1);
    assert!(matches!(tensor(&x, &y), Err(Error::TagMismatch(_))));
    let z = BaseObject::finvect_dim(3, 1);
    assert!(matches!(tensor(&y, &z), Err(Error::TagMismatch(_))));
}

#[test]
fn empty_coproduct_is_initial() {
    let cop = coproduct(f2(), &[]).unwrap();
    assert_eq!(cop.total.size(), 0);
}

#[test]
fn coproduct_of_singletons() {
    let a = BaseObject::finset(vec!["x"]);
    let b = BaseObject::finset(vec!["y"]);
    let cop = coproduct(
        BaseKind::FinSet,
        &[("u".to_string(), a), ("v".to_string(), b)],
    )
    .unwrap();
    assert_eq!(cop.total.labels(), &["u:x", "v:y"]);
    for inj in &cop.injections {
        let m = inj.map().unwrap();
        assert_eq!(m.len(), 1);
    }
}

#[test]
fn coproduct_blocks_at_offsets() {
    // dims [1,2,1] over F_3: injections hit blocks at offsets 0, 1, 3.
    // Derived by multiplying each injection against every basis vector.
    let parts = [
        ("a".to_string(), BaseObject::finvect_dim(3, 1)),
        ("b".to_string(), BaseObject::finvect_dim(3, 2)),
        ("c".to_string(), BaseObject::finvect_dim(3, 1)),
    ];
    let cop = coproduct(f3(), &parts).unwrap();
    assert_eq!(cop.total.size(), 4);
    assert_eq!(cop.offsets(), vec![0, 1, 3]);
    for (b, inj) in cop.injections.iter().enumerate() {
        for j in 0..cop.parts[b].size() {
            let img = inj.compose(&basis_elem(&cop.parts[b], j));
            let expected = basis_elem(&cop.total, cop.offsets()[b] + j);
            assert_eq!(img.matrix(), expected.matrix());
        }
    }
}

#[test]
fn duplicate_tags_rejected() {
    let a = BaseObject::finvect_dim(2, 1);
    let parts = [("u".to_string(), a.clone()), ("u".to_string(), a)];
    assert!(matches!(coproduct(f2(), &parts), Err(Error::DuplicateTag(_))));
}

#[test]
fn copair_universal_property_finset() {
    let a = BaseObject::finset(vec!["a1", "a2"]);
    let b = BaseObject::finset(vec!["b1"]);
    let cop = coproduct(
        BaseKind::FinSet,
        &[("u".to_string(), a.clone()), ("v".to_string(), b.clone())],
    )
    .unwrap();
    let t = BaseObject::finset(vec!["t1", "t2"]);
    // every cone copairs, restricts correctly, and the copair is unique
    for m1 in 0..(t.size().pow(a.size() as u32)) {
        for m2 in 0..(t.size().pow(b.size() as u32)) {
            let leg_a = BaseMorphism::from_map(a.clone(), t.clone(), vec![m1 % 2, m1 / 2]);
            let leg_b = BaseMorphism::from_map(b.clone(), t.clone(), vec![m2]);
            let cone = vec![leg_a.clone(), leg_b.clone()];
            let cp = cop.copair(&cone).unwrap();
            assert_eq!(cp.compose(&cop.injections[0]), leg_a);
            assert_eq!(cp.compose(&cop.injections[1]), leg_b);
            // uniqueness: exhaust all maps total -> t
            let n = cop.total.size();
            let mut found = 0;
            for code in 0..(t.size().pow(n as u32)) {
                let mut c = code;
                let mut map = Vec::new();
                for _ in 0..n {
                    map.push(c % t.size());
                    c /= t.size();
                }
                let h = BaseMorphism::from_map(cop.total.clone(), t.clone(), map);
                if h.compose(&cop.injections[0]) == leg_a && h.compose(&cop.injections[1]) == leg_b
                {
                    assert_eq!(h, cp);
                    found += 1;
                }
            }
            assert_eq!(found, 1);
        }
    }
}

#[test]
fn equalizer_of_equal_pair_is_identity() {
    let a = BaseObject::finvect_dim(2, 3);
    let f = BaseMorphism::from_matrix(
        a.clone(),
        BaseObject::finvect_dim(2, 1),
        Mat::from_rows(vec![vec![1, 0, 1]], 3, 2),
    );
    let (obj, incl) = equalizer(&f, &f).unwrap();
    assert_eq!(obj.size(), a.size());
    assert!(incl.is_iso());
}

#[test]
fn equalizer_finset_example() {
    // f,g : {a,b} -> {x,y}, f = (x,y), g = (y,y): equalizer {b}.
    let d = BaseObject::finset(vec!["a", "b"]);
    let c = BaseObject::finset(vec!["x", "y"]);
    let f = BaseMorphism::from_map(d.clone(), c.clone(), vec![0, 1]);
    let g = BaseMorphism::from_map(d.clone(), c.clone(), vec![1, 1]);
    let (obj, incl) = equalizer(&f, &g).unwrap();
    assert_eq!(obj.labels(), &["b"]);
    assert_eq!(incl.map().unwrap(), &[1]);
}

#[test]
fn equalizer_finvect_kernel_example() {
    // f = [1 0], g = [0 0] over F_2: kernel spanned by the second basis vector.
    let d = BaseObject::finvect_dim(2, 2);
    let c = BaseObject::finvect_dim(2, 1);
    let f = BaseMorphism::from_matrix(d.clone(), c.clone(), Mat::from_rows(vec![vec![1, 0]], 2, 2));
    let g = BaseMorphism::zero(&d, &c);
    let (obj, incl) = equalizer(&f, &g).unwrap();
    assert_eq!(obj.size(), 1);
    assert_eq!(incl.matrix().unwrap().col(0), vec![0, 1]);
}

#[test]
fn equalizer_universal_property() {
    // every element forking f,g factors uniquely through the equalizer
    let d = BaseObject::finvect_dim(3, 3);
    let c = BaseObject::finvect_dim(3, 2);
    let f = BaseMorphism::from_matrix(
        d.clone(),
        c.clone(),
        Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 1]], 3, 3),
    );
    let g = BaseMorphism::from_matrix(
        d.clone(),
        c.clone(),
        Mat::from_rows(vec![vec![1, 0, 1], vec![0, 1, 1]], 3, 3),
    );
    let (_, incl) = equalizer(&f, &g).unwrap();
    let mut forks = 0;
    for e in underlying_set(&d, 4096).unwrap() {
        if f.compose(&e) == g.compose(&e) {
            forks += 1;
            let h = factor_through_mono(&incl, &e).unwrap();
            assert_eq!(incl.compose(&h), e);
        }
    }
    assert!(forks > 1, "test should exercise nontrivial forks");
}

#[test]
fn equalizer_rejects_non_parallel() {
    let d = BaseObject::finvect_dim(2, 2);
    let f = BaseMorphism::zero(&d, &BaseObject::finvect_dim(2, 1));
    let g = BaseMorphism::zero(&d, &BaseObject::finvect_dim(2, 2));
    assert!(matches!(equalizer(&f, &g), Err(Error::ShapeMismatch(_))));
}

#[test]
fn pullback_along_identity() {
    let a = BaseObject::finvect_dim(2, 2);
    let c = BaseObject::finvect_dim(2, 1);
    let f = BaseMorphism::from_matrix(a.clone(), c.clone(), Mat::from_rows(vec![vec![1, 1]], 2, 2));
    let g = BaseMorphism::identity(&c);
    let (obj, pr1, _pr2) = pullback(&f, &g).unwrap();
    assert_eq!(obj.size(), a.size());
    assert!(pr1.is_iso());
}

#[test]
fn pullback_of_constants_is_product() {
    let a = BaseObject::finset(vec!["a1", "a2"]);
    let b = BaseObject::finset(vec!["b1", "b2", "b3"]);
    let c = BaseObject::finset(vec!["c"]);
    let f = BaseMorphism::from_map(a.clone(), c.clone(), vec![0, 0]);
    let g = BaseMorphism::from_map(b.clone(), c.clone(), vec![0, 0, 0]);
    let (obj, _, _) = pullback(&f, &g).unwrap();
    assert_eq!(obj.size(), 6);
}

#[test]
fn pullback_diagonal() {
    let a = BaseObject::finvect_dim(2, 1);
    let f = BaseMorphism::identity(&a);
    let (obj, pr1, pr2) = pullback(&f, &f).unwrap();
    assert_eq!(obj.size(), 1);
    assert_eq!(pr1, pr2);
}

#[test]
fn free_on_empty_set_is_initial() {
    let obj = free_on_set(f2(), Vec::<String>::new());
    assert_eq!(obj.size(), 0);
    let delta = free_delta(&obj);
    assert_eq!(delta.dom.size(), 0);
}

#[test]
fn free_comonoid_diagonal() {
    let obj = free_on_set(f2(), vec!["e", "g"]);
    let delta = free_delta(&obj);
    let e = basis_elem(&obj, 0);
    let g = basis_elem(&obj, 1);
    let ee = tensor_mor(&e, &g).unwrap(); // columns give basis images anyway
    let _ = ee;
    // Δ(e) = e⊗e at position 0, Δ(g) = g⊗g at position 3
    assert_eq!(delta.matrix().unwrap().col(0), vec![1, 0, 0, 0]);
    assert_eq!(delta.matrix().unwrap().col(1), vec![0, 0, 0, 1]);
}

#[test]
fn free_counitality() {
    // (ε⊗1)∘Δ equals the canonical iso M → 1⊗M on S = {a,b,c}
    for kind in [BaseKind::FinSet, f2(), f3()] {
        let m = free_on_set(kind, vec!["a", "b", "c"]);
        let delta = free_delta(&m);
        let eps = free_eps(&m);
        let lhs = tensor_mor(&eps, &BaseMorphism::identity(&m))
            .unwrap()
            .compose(&delta);
        let rhs = unitor_left_inv(&m).unwrap();
        assert_eq!(lhs, rhs);
        // and (1⊗ε)∘Δ = r⁻¹
        let lhs = tensor_mor(&BaseMorphism::identity(&m), &eps)
            .unwrap()
            .compose(&delta);
        assert_eq!(lhs, unitor_right_inv(&m).unwrap());
    }
}

#[test]
fn underlying_set_counts() {
    let unit = BaseObject::unit(f2());
    assert_eq!(underlying_set(&unit, 4096).unwrap().len(), 2);
    let s = BaseObject::finset(vec!["a", "b"]);
    assert_eq!(underlying_set(&s, 4096).unwrap().len(), 2);
    let v = BaseObject::finvect_dim(3, 2);
    assert_eq!(underlying_set(&v, 4096).unwrap().len(), 9);
}

#[test]
fn underlying_set_cap() {
    let v = BaseObject::finvect_dim(2, 13);
    assert!(matches!(underlying_set(&v, 4096), Err(Error::SizeCap(_))));
}

#[test]
fn pentagon_coherence() {
    let samples: Vec<Vec<BaseObject>> = vec![
        vec![
            BaseObject::finset(vec!["a", "b"]),
            BaseObject::finset(vec!["x"]),
            BaseObject::finset(vec!["p", "q"]),
            BaseObject::finset(vec!["z"]),
        ],
        vec![
            BaseObject::finvect_dim(2, 2),
            BaseObject::finvect_dim(2, 1),
            BaseObject::finvect_dim(2, 3),
            BaseObject::finvect_dim(2, 2),
        ],
    ];
    for s in samples {
        let (a, b, c, d) = (&s[0], &s[1], &s[2], &s[3]);
        let bc = tensor(b, c).unwrap();
        let cd = tensor(c, d).unwrap();
        let ab = tensor(a, b).unwrap();
        // A⊗(B⊗(C⊗D)) → ((A⊗B)⊗C)⊗D two ways
        let route1 = associator(&ab, c, d)
            .unwrap()
            .compose(&associator(a, b, &cd).unwrap());
        let route2 = tensor_mor(&associator(a, b, c).unwrap(), &BaseMorphism::identity(d))
            .unwrap()
            .compose(
                &associator(a, &bc, d).unwrap().compose(
                    &tensor_mor(&BaseMorphism::identity(a), &associator(b, c, d).unwrap())
                        .unwrap(),
                ),
            );
        assert_eq!(route1, route2);
    }
}

#[test]
fn triangle_coherence() {
    for (a, b) in [
        (BaseObject::finset(vec!["a", "b"]), BaseObject::finset(vec!["x", "y", "z"])),
        (BaseObject::finvect_dim(3, 2), BaseObject::finvect_dim(3, 2)),
    ] {
        let unit = BaseObject::unit(a.kind());
        // A⊗(1⊗B) --1⊗ℓ--> A⊗B equals A⊗(1⊗B) --a--> (A⊗1)⊗B --r⊗1--> A⊗B
        let lhs = tensor_mor(&BaseMorphism::identity(&a), &unitor_left(&b).unwrap()).unwrap();
        let rhs = tensor_mor(&unitor_right(&a).unwrap(), &BaseMorphism::identity(&b))
            .unwrap()
            .compose(&associator(&a, &unit, &b).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn symmetry_involution_and_hexagon() {
    let a = BaseObject::finvect_dim(2, 2);
    let b = BaseObject::finvect_dim(2, 3);
    let c = BaseObject::finvect_dim(2, 2);
    let t_ab = symmetry(&a, &b).unwrap();
    let t_ba = symmetry(&b, &a).unwrap();
    assert!(t_ba.compose(&t_ab).is_identity());
    // hexagon: t_{A,B⊗C} = a ∘ (1⊗t_{A,C}) ∘ a⁻¹ ∘ (t_{A,B}⊗1) ∘ a
    let bc = tensor(&b, &c).unwrap();
    let lhs = symmetry(&a, &bc).unwrap();
    let rhs = associator(&b, &c, &a)
        .unwrap()
        .compose(
            &tensor_mor(&BaseMorphism::identity(&b), &symmetry(&a, &c).unwrap())
                .unwrap()
                .compose(
                    &associator_inv(&b, &a, &c).unwrap().compose(
                        &tensor_mor(&symmetry(&a, &b).unwrap(), &BaseMorphism::identity(&c))
                            .unwrap()
                            .compose(&associator(&a, &b, &c).unwrap()),
                    ),
                ),
        );
    assert_eq!(lhs, rhs);
}

#[test]
fn middle_four_agrees_with_structure_composite() {
    let a = BaseObject::finvect_dim(2, 2);
    let b = BaseObject::finvect_dim(2, 2);
    let c = BaseObject::finvect_dim(2, 3);
    let d = BaseObject::finvect_dim(2, 1);
    let direct = middle_four(&a, &b, &c, &d).unwrap();
    // (A⊗B)⊗(C⊗D) → A⊗(B⊗(C⊗D)) → A⊗((B⊗C)⊗D) → A⊗((C⊗B)⊗D)
    //   → A⊗(C⊗(B⊗D)) → (A⊗C)⊗(B⊗D)
    let cd = tensor(&c, &d).unwrap();
    let bd = tensor(&b, &d).unwrap();
    let id_a = BaseMorphism::identity(&a);
    let id_d = BaseMorphism::identity(&d);
    let step1 = associator_inv(&a, &b, &cd).unwrap();
    let step2 = tensor_mor(&id_a, &associator(&b, &c, &d).unwrap()).unwrap();
    let step3 = tensor_mor(
        &id_a,
        &tensor_mor(&symmetry(&b, &c).unwrap(), &id_d).unwrap(),
    )
    .unwrap();
    let step4 = tensor_mor(&id_a, &associator_inv(&c, &b, &d).unwrap()).unwrap();
    let step5 = associator(&a, &c, &bd).unwrap();
    let composite = step5
        .compose(&step4)
        .compose(&step3)
        .compose(&step2)
        .compose(&step1);
    assert_eq!(direct, composite);
}

#[test]
fn distribution_isos() {
    let parts = [
        ("u".to_string(), BaseObject::finvect_dim(2, 2)),
        ("v".to_string(), BaseObject::finvect_dim(2, 1)),
    ];
    let cop = coproduct(f2(), &parts).unwrap();
    let n = BaseObject::finvect_dim(2, 3);
    let (_, iso_r) = distribute_right(&cop, &n).unwrap();
    assert!(iso_r.is_iso());
    let (dist, iso_l) = distribute_left(&n, &cop).unwrap();
    assert!(iso_l.is_iso());
    // left distribution restricted along 1⊗inj equals the block injection
    for (b, inj) in cop.injections.iter().enumerate() {
        let lhs = iso_l.compose(&tensor_mor(&BaseMorphism::identity(&n), inj).unwrap());
        let rhs = dist.injections[b].clone();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn free_theta_is_canonical_iso() {
    // (S×T)⊗1 and (S⊗1)⊗(T⊗1) coincide under the pair-label layout.
    let s = free_on_set(f2(), vec!["s0", "s1"]);
    let t = free_on_set(f2(), vec!["t0"]);
    let st_pairs = tensor(&s, &t).unwrap();
    let free_st = free_on_set(f2(), st_pairs.labels().to_vec());
    assert_eq!(free_st, st_pairs);
}

#[test]
fn decomposition_validate_and_copair() {
    // a non-canonical decomposition of F_2^2: parts spanned by (1,1) and (0,1)
    let ambient = BaseObject::finvect_dim(2, 2);
    let p1 = BaseObject::finvect(2, vec!["a"]);
    let p2 = BaseObject::finvect(2, vec!["b"]);
    let dec = Decomposition {
        ambient: ambient.clone(),
        tags: vec!["u".into(), "v".into()],
        parts: vec![p1.clone(), p2.clone()],
        injections: vec![
            BaseMorphism::from_matrix(p1.clone(), ambient.clone(), Mat::from_rows(vec![vec![1], vec![1]], 1, 2)),
            BaseMorphism::from_matrix(p2.clone(), ambient.clone(), Mat::from_rows(vec![vec![0], vec![1]], 1, 2)),
        ],
    };
    dec.validate().unwrap();
    let t = BaseObject::finvect_dim(2, 1);
    let cone = vec![
        BaseMorphism::from_matrix(p1, t.clone(), Mat::from_rows(vec![vec![1]], 1, 2)),
        BaseMorphism::zero(&p2, &t),
    ];
    let h = dec.copair_cone(&cone, &t).unwrap();
    for (i, inj) in dec.injections.iter().enumerate() {
        assert_eq!(h.compose(inj), cone[i]);
    }
}

#[test]
fn bilinear_from_parts_assembles_blocks() {
    // finset: two decompositions, assemble a map and check block restriction
    let amb = BaseObject::finset(vec!["x", "y"]);
    let (px, ix) = subset_object(&amb, &[0]);
    let (py, iy) = subset_object(&amb, &[1]);
    let dec = Decomposition {
        ambient: amb.clone(),
        tags: vec!["0".into(), "1".into()],
        parts: vec![px, py],
        injections: vec![ix, iy],
    };
    let cod = BaseObject::finset(vec!["p", "q", "r", "s"]);
    let out = bilinear_from_parts(&dec, &dec, &cod, &mut |i, j| {
        let dom = tensor(&dec.parts[i], &dec.parts[j]).unwrap();
        Ok(BaseMorphism::from_map(dom, cod.clone(), vec![i * 2 + j]))
    })
    .unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let blk = out.compose(&tensor_mor(&dec.injections[i], &dec.injections[j]).unwrap());
            assert_eq!(blk.map().unwrap(), &[i * 2 + j]);
        }
    }
}
