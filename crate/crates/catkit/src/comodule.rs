//! Comonoids, comodules, the cotensor product, and graded categories.
//!
//! A grading of a `V`-category `X` by an index category `I` is a right
//! comodule structure `μ : X → X ⊗ (I⊗1)` over the free coalgebra
//! category `I⊗1`. Over both of our bases this is the same thing as a
//! degree map on objects together with a direct-sum decomposition of every
//! hom object into components indexed by the morphisms `p(x) → p(y)` of
//! `I`, compatible with composition and identities.
//!
//! Gradings are *stored* as tagged decompositions — all downstream
//! constructions consume components — and the coaction morphism is
//! reconstructed on demand for the comodule-law checks.

use crate::base::{
    self, associator, basis_elem, equalizer, subset_object, tensor, tensor_mor, unit_split,
    unitor_left_inv, unitor_right, unitor_right_inv, BaseKind, BaseMorphism, BaseObject,
    Decomposition,
};
use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::vcat::{free_vcat, tensor_nats, tensor_vcats, tensor_vfunctors, IndexCat, VCat, VFunctor, VNatTrans};

/// A comonoid object: carrier with coassociative counital coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comonoid {
    pub carrier: BaseObject,
    pub delta: BaseMorphism,
    pub eps: BaseMorphism,
}

impl Comonoid {
    /// The free comonoid on an ordered label set: `Δ(s) = s⊗s`, `ε(s) = 1`.
    pub fn free<S: Into<String>>(kind: BaseKind, labels: Vec<S>) -> Comonoid {
        let carrier = base::free_on_set(kind, labels);
        Comonoid {
            delta: base::free_delta(&carrier),
            eps: base::free_eps(&carrier),
            carrier,
        }
    }

    pub fn validate(&self) -> LawReport {
        let c = &self.carrier;
        let id = BaseMorphism::identity(c);
        let mut checks = 3;
        let left = tensor_mor(&self.eps, &id).unwrap().compose(&self.delta);
        if left != unitor_left_inv(c).unwrap() {
            return LawReport::fail(1, "comonoid left counit", "carrier", left.to_string(), "ℓ⁻¹");
        }
        let right = tensor_mor(&id, &self.eps).unwrap().compose(&self.delta);
        if right != unitor_right_inv(c).unwrap() {
            return LawReport::fail(2, "comonoid right counit", "carrier", right.to_string(), "r⁻¹");
        }
        let lhs = tensor_mor(&self.delta, &id).unwrap().compose(&self.delta);
        let rhs = associator(c, c, c)
            .unwrap()
            .compose(&tensor_mor(&id, &self.delta).unwrap())
            .compose(&self.delta);
        if lhs != rhs {
            return LawReport::fail(
                3,
                "comonoid coassociativity",
                "carrier",
                lhs.to_string(),
                rhs.to_string(),
            );
        }
        checks += 0;
        LawReport::pass(checks)
    }
}

/// Which side a coaction acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An object with a (co)unital, coassociative coaction of a comonoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comodule {
    pub carrier: BaseObject,
    pub over: Comonoid,
    pub side: Side,
    /// `M → M⊗C` (right) or `M → C⊗M` (left).
    pub coaction: BaseMorphism,
}

impl Comodule {
    pub fn new(over: Comonoid, side: Side, coaction: BaseMorphism) -> Result<Comodule> {
        let carrier = coaction.dom.clone();
        let expect = match side {
            Side::Right => tensor(&carrier, &over.carrier)?,
            Side::Left => tensor(&over.carrier, &carrier)?,
        };
        if coaction.cod != expect {
            return Err(Error::ShapeMismatch("coaction has the wrong codomain".into()));
        }
        Ok(Comodule {
            carrier,
            over,
            side,
            coaction,
        })
    }

    pub fn validate(&self) -> LawReport {
        let m = &self.carrier;
        let c = &self.over.carrier;
        let id_m = BaseMorphism::identity(m);
        match self.side {
            Side::Right => {
                let counit = tensor_mor(&id_m, &self.over.eps)
                    .unwrap()
                    .compose(&self.coaction);
                if counit != unitor_right_inv(m).unwrap() {
                    return LawReport::fail(1, "coaction counit", "carrier", counit.to_string(), "r⁻¹");
                }
                let lhs = tensor_mor(&self.coaction, &BaseMorphism::identity(c))
                    .unwrap()
                    .compose(&self.coaction);
                let rhs = associator(m, c, c)
                    .unwrap()
                    .compose(&tensor_mor(&id_m, &self.over.delta).unwrap())
                    .compose(&self.coaction);
                if lhs != rhs {
                    return LawReport::fail(
                        2,
                        "coaction coassociativity",
                        "carrier",
                        lhs.to_string(),
                        rhs.to_string(),
                    );
                }
            }
            Side::Left => {
                let counit = tensor_mor(&self.over.eps, &id_m)
                    .unwrap()
                    .compose(&self.coaction);
                if counit != unitor_left_inv(m).unwrap() {
                    return LawReport::fail(1, "coaction counit", "carrier", counit.to_string(), "ℓ⁻¹");
                }
                let lhs = tensor_mor(&self.over.delta, &id_m)
                    .unwrap()
                    .compose(&self.coaction);
                let rhs = associator(c, c, m)
                    .unwrap()
                    .compose(&tensor_mor(&BaseMorphism::identity(c), &self.coaction).unwrap())
                    .compose(&self.coaction);
                if lhs != rhs {
                    return LawReport::fail(
                        2,
                        "coaction coassociativity",
                        "carrier",
                        lhs.to_string(),
                        rhs.to_string(),
                    );
                }
            }
        }
        LawReport::pass(2)
    }
}

/// The cotensor product `M □_C N`: the equalizer of `μ_M ⊗ 1_N` and
/// `1_M ⊗ μ_N` inside `M⊗N`, with its canonical inclusion.
pub fn cotensor(m: &Comodule, n: &Comodule) -> Result<(BaseObject, BaseMorphism)> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::ShapeMismatch(
            "cotensor needs a right and a left comodule".into(),
        ));
    }
    if m.over != n.over {
        return Err(Error::TagMismatch(
            "cotensor: comodules live over different comonoids".into(),
        ));
    }
    let f = tensor_mor(&m.coaction, &BaseMorphism::identity(&n.carrier))?;
    let g = associator(&m.carrier, &m.over.carrier, &n.carrier)?
        .compose(&tensor_mor(&BaseMorphism::identity(&m.carrier), &n.coaction)?);
    equalizer(&f, &g)
}

/// Extract the tagged direct-sum decomposition encoded by a right comodule
/// over a free comonoid `S⊗1`. For finvect this builds the projectors
/// `p_s`, verifies they are orthogonal idempotents summing to the
/// identity, and takes canonical images; for finset it reads off the
/// fibers of the degree map.
pub fn decomposition_from_comodule(m: &Comodule) -> Result<Decomposition> {
    if m.side != Side::Right {
        return Err(Error::NotAComodule("expected a right comodule".into()));
    }
    let laws = m.validate();
    if !laws.passed() {
        return Err(Error::NotAComodule(laws.to_string()));
    }
    let c = &m.over.carrier;
    let tags: Vec<String> = c.labels().to_vec();
    match m.carrier.kind() {
        BaseKind::FinSet => {
            // μ(i) = (i, deg i) by counitality; the parts are the fibers.
            let prod_labels = m.coaction.cod.labels();
            let mut parts = Vec::new();
            let mut injections = Vec::new();
            let deg: Vec<usize> = (0..m.carrier.size())
                .map(|i| {
                    let img = m.coaction.apply(i);
                    // position within the pair (i, s): row-major over (M, C)
                    let s = img % c.size();
                    let _ = prod_labels;
                    s
                })
                .collect();
            for s in 0..c.size() {
                let indices: Vec<usize> =
                    (0..m.carrier.size()).filter(|&i| deg[i] == s).collect();
                let (part, inj) = subset_object(&m.carrier, &indices);
                parts.push(part);
                injections.push(inj);
            }
            Ok(Decomposition {
                ambient: m.carrier.clone(),
                tags,
                parts,
                injections,
            })
        }
        BaseKind::FinVect { prime } => {
            let dim = m.carrier.size();
            let id = base::matrix::Mat::identity(dim);
            let mut projectors = Vec::new();
            for s in 0..c.size() {
                // p_s = r ∘ (1 ⊗ π_s) ∘ μ, with π_s the dual basis row.
                let mut pi = base::matrix::Mat::zeros(1, c.size());
                pi.set(0, s, 1);
                let unit = BaseObject::unit(m.carrier.kind());
                let pi = BaseMorphism::from_matrix(c.clone(), unit, pi);
                let p_s = unitor_right(&m.carrier)?
                    .compose(&tensor_mor(&BaseMorphism::identity(&m.carrier), &pi)?)
                    .compose(&m.coaction);
                projectors.push(p_s.matrix().unwrap().clone());
            }
            // orthogonal idempotents summing to the identity
            let mut sum = base::matrix::Mat::zeros(dim, dim);
            for p_s in &projectors {
                sum = sum.add(p_s, prime);
            }
            if sum != id {
                return Err(Error::NotAComodule(
                    "projectors do not sum to the identity".into(),
                ));
            }
            for (s, p_s) in projectors.iter().enumerate() {
                for (t, p_t) in projectors.iter().enumerate() {
                    let prod = p_s.mul(p_t, prime);
                    let expect = if s == t {
                        p_s.clone()
                    } else {
                        base::matrix::Mat::zeros(dim, dim)
                    };
                    if prod != expect {
                        return Err(Error::NotAComodule(format!(
                            "projectors p_{s} p_{t} fail orthogonal idempotence"
                        )));
                    }
                }
            }
            let mut parts = Vec::new();
            let mut injections = Vec::new();
            for p_s in &projectors {
                let mor = BaseMorphism::from_matrix(
                    m.carrier.clone(),
                    m.carrier.clone(),
                    p_s.clone(),
                );
                let (part, inj) = base::image_subobject(&mor);
                parts.push(part);
                injections.push(inj);
            }
            Ok(Decomposition {
                ambient: m.carrier.clone(),
                tags,
                parts,
                injections,
            })
        }
    }
}

/// The inverse translation: a tagged decomposition indexed by the labels
/// of a free comonoid induces a right coaction, component by component.
pub fn comodule_from_decomposition(over: &Comonoid, dec: &Decomposition) -> Result<Comodule> {
    if dec.tags != over.carrier.labels() {
        return Err(Error::ShapeMismatch(
            "decomposition tags must match the comonoid labels in order".into(),
        ));
    }
    dec.validate()?;
    let cod = tensor(&dec.ambient, &over.carrier)?;
    let cone: Vec<BaseMorphism> = dec
        .parts
        .iter()
        .zip(&dec.injections)
        .enumerate()
        .map(|(s, (part, inj))| {
            Ok(tensor_mor(inj, &basis_elem(&over.carrier, s))?
                .compose(&unitor_right_inv(part)?))
        })
        .collect::<Result<_>>()?;
    let coaction = dec.copair_cone(&cone, &cod)?;
    Comodule::new(over.clone(), Side::Right, coaction)
}

/// A `V`-category with an `I`-grading, stored as a degree map plus a
/// per-hom tagged decomposition whose tags run over the morphisms
/// `p(x) → p(y)` of `I` in morphism-list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVCat {
    pub cat: VCat,
    pub index: IndexCat,
    pub degree: Vec<usize>,
    /// decomposition of hom(x,y), indexed x * n + y
    dec: Vec<Decomposition>,
}

impl GradedVCat {
    pub fn new(
        cat: VCat,
        index: IndexCat,
        degree: Vec<usize>,
        dec: Vec<Decomposition>,
    ) -> Result<GradedVCat> {
        let n = cat.n_objects();
        if degree.len() != n || dec.len() != n * n {
            return Err(Error::IncompleteData(
                "grading tables must cover every object and hom pair".into(),
            ));
        }
        if degree.iter().any(|&i| i >= index.n_objects()) {
            return Err(Error::UnresolvedReference("degree target".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let d = &dec[x * n + y];
                if &d.ambient != cat.hom(x, y) {
                    return Err(Error::ShapeMismatch(format!(
                        "decomposition at ({x},{y}) is not a decomposition of hom({x},{y})"
                    )));
                }
                let expected: Vec<String> = index
                    .mors_between(degree[x], degree[y])
                    .into_iter()
                    .map(|u| index.morphisms[u].name.clone())
                    .collect();
                if d.tags != expected {
                    return Err(Error::ShapeMismatch(format!(
                        "decomposition tags at ({x},{y}) must be the morphisms p(x)→p(y) in order"
                    )));
                }
                d.validate()?;
            }
        }
        Ok(GradedVCat {
            cat,
            index,
            degree,
            dec,
        })
    }

    pub fn kind(&self) -> BaseKind {
        self.cat.kind
    }

    pub fn degree_of(&self, x: usize) -> usize {
        self.degree[x]
    }

    pub fn decomposition(&self, x: usize, y: usize) -> &Decomposition {
        &self.dec[x * self.cat.n_objects() + y]
    }

    /// The free `V`-category `C = I⊗1` the grading coacts over.
    pub fn coalgebra(&self) -> VCat {
        free_vcat(self.kind(), &self.index)
    }

    /// The reconstructed coaction `X(x,y) → X(x,y) ⊗ C(p(x), p(y))`.
    pub fn coaction(&self, x: usize, y: usize) -> Result<BaseMorphism> {
        let c = self.coalgebra();
        let chom = c.hom(self.degree[x], self.degree[y]);
        let d = self.decomposition(x, y);
        let cod = tensor(&d.ambient, chom)?;
        let cone: Vec<BaseMorphism> = d
            .parts
            .iter()
            .zip(&d.injections)
            .enumerate()
            .map(|(u, (part, inj))| {
                Ok(tensor_mor(inj, &basis_elem(chom, u))?
                    .compose(&unitor_right_inv(part)?))
            })
            .collect::<Result<_>>()?;
        d.copair_cone(&cone, &cod)
    }

    /// The coaction packaged as a `V`-functor `X → X ⊗ (I⊗1)`.
    pub fn coaction_functor(&self) -> Result<(VCat, VFunctor)> {
        let c = self.coalgebra();
        let t = tensor_vcats(&self.cat, &c)?;
        let nc = c.n_objects();
        let obj_map: Vec<usize> = (0..self.cat.n_objects())
            .map(|x| x * nc + self.degree[x])
            .collect();
        let f = VFunctor::new(self.cat.clone(), t.clone(), obj_map, |x, y| {
            self.coaction(x, y).unwrap()
        })?;
        Ok((t, f))
    }

    /// Check the grading laws: the coaction is an enriched functor
    /// (composition compatibility and identity degrees), it is counital
    /// and coassociative on every hom, the identity element lands in the
    /// `1_{p(x)}` component, and composition restricts componentwise to
    /// `X^v(y,z) ∘ X^u(x,y) ⊆ X^{v∘u}(x,z)`.
    pub fn validate(&self) -> LawReport {
        let n = self.cat.n_objects();
        let laws = self.cat.validate();
        if !laws.passed() {
            return laws;
        }
        let (_, mu) = match self.coaction_functor() {
            Ok(v) => v,
            Err(e) => return LawReport::fail(0, "coaction shape", "grading", e.to_string(), ""),
        };
        let report = laws.and_then(|| mu.validate());
        if !report.passed() {
            return report;
        }
        let mut checks = report.checks;
        let c = self.coalgebra();
        for x in 0..n {
            for y in 0..n {
                checks += 2;
                let chom = c.hom(self.degree[x], self.degree[y]);
                let coact = self.coaction(x, y).unwrap();
                let h = self.cat.hom(x, y);
                let counit = tensor_mor(&BaseMorphism::identity(h), &base::free_eps(chom))
                    .unwrap()
                    .compose(&coact);
                if counit != unitor_right_inv(h).unwrap() {
                    return LawReport::fail(
                        checks,
                        "grading counit",
                        format!("hom ({x},{y})"),
                        counit.to_string(),
                        "r⁻¹",
                    );
                }
                let lhs = tensor_mor(&coact, &BaseMorphism::identity(chom))
                    .unwrap()
                    .compose(&coact);
                let rhs = associator(h, chom, chom)
                    .unwrap()
                    .compose(
                        &tensor_mor(&BaseMorphism::identity(h), &base::free_delta(chom)).unwrap(),
                    )
                    .compose(&coact);
                if lhs != rhs {
                    return LawReport::fail(
                        checks,
                        "grading coassociativity",
                        format!("hom ({x},{y})"),
                        lhs.to_string(),
                        rhs.to_string(),
                    );
                }
            }
        }
        // identity lands in the identity component
        for x in 0..n {
            checks += 1;
            let d = self.decomposition(x, x);
            let id_tag = self
                .index
                .mors_between(self.degree[x], self.degree[x])
                .iter()
                .position(|&u| u == self.index.identity(self.degree[x]))
                .expect("identity morphism is among the endomorphisms");
            if d.restrict(id_tag, self.cat.id(x)).is_err() {
                return LawReport::fail(
                    checks,
                    "identity degree",
                    format!("object {}", self.cat.objects[x]),
                    format!("1_{}", self.cat.objects[x]),
                    "must land in the identity component",
                );
            }
        }
        // componentwise composition restriction
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let dxy = self.decomposition(x, y);
                    let dyz = self.decomposition(y, z);
                    let dxz = self.decomposition(x, z);
                    let mors_xy = self.index.mors_between(self.degree[x], self.degree[y]);
                    let mors_yz = self.index.mors_between(self.degree[y], self.degree[z]);
                    let mors_xz = self.index.mors_between(self.degree[x], self.degree[z]);
                    for (vi, &v) in mors_yz.iter().enumerate() {
                        for (ui, &u) in mors_xy.iter().enumerate() {
                            checks += 1;
                            let w = self.index.compose(v, u);
                            let wi = mors_xz.iter().position(|&m| m == w).unwrap();
                            let restricted = self.cat.comp(x, y, z).compose(
                                &tensor_mor(&dyz.injections[vi], &dxy.injections[ui]).unwrap(),
                            );
                            if dxz.restrict(wi, &restricted).is_err() {
                                return LawReport::fail(
                                    checks,
                                    "componentwise composition",
                                    format!(
                                        "X^{}({},{}) ∘ X^{}({},{})",
                                        self.index.morphisms[v].name,
                                        self.cat.objects[y],
                                        self.cat.objects[z],
                                        self.index.morphisms[u].name,
                                        self.cat.objects[x],
                                        self.cat.objects[y],
                                    ),
                                    "image",
                                    format!(
                                        "must land in the {} component",
                                        self.index.morphisms[w].name
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// The free category `I⊗1` graded over itself by identity degrees; every
/// hom decomposes into one singleton component per morphism.
pub fn free_grading(kind: BaseKind, index: &IndexCat) -> GradedVCat {
    let cat = free_vcat(kind, index);
    let n = cat.n_objects();
    let mut dec = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let ambient = cat.hom(i, j).clone();
            let mors = index.mors_between(i, j);
            let mut parts = Vec::new();
            let mut injections = Vec::new();
            for (pos, &u) in mors.iter().enumerate() {
                let (part, inj) = subset_object(&ambient, &[pos]);
                let _ = u;
                parts.push(part);
                injections.push(inj);
            }
            dec.push(Decomposition {
                ambient,
                tags: mors
                    .iter()
                    .map(|&u| index.morphisms[u].name.clone())
                    .collect(),
                parts,
                injections,
            });
        }
    }
    GradedVCat::new(cat, index.clone(), (0..n).collect(), dec).unwrap()
}

/// Variance of a graded morphism: the direction of its comparison cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Left,
    Right,
}

/// A degree-preserving morphism of graded categories: an enriched functor
/// together with, per object, a single morphism of `I` filling the
/// comodule square. Homogeneity — the degree part lives in `I`, not in
/// the underlying set of `I⊗1` — is enforced structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    pub dom: GradedVCat,
    pub cod: GradedVCat,
    pub variance: Variance,
    pub functor: VFunctor,
    /// `deg[x]` is an `I`-morphism index: `p'(F x) → p(x)` for left
    /// morphisms, `p(x) → p'(F x)` for right ones.
    pub deg: Vec<usize>,
}

impl GradedMorphism {
    pub fn new(
        dom: GradedVCat,
        cod: GradedVCat,
        variance: Variance,
        functor: VFunctor,
        deg: Vec<usize>,
    ) -> Result<GradedMorphism> {
        if dom.index != cod.index {
            return Err(Error::TagMismatch("graded morphism across different index categories".into()));
        }
        if functor.dom != dom.cat || functor.cod != cod.cat {
            return Err(Error::ShapeMismatch("graded morphism functor endpoints".into()));
        }
        if deg.len() != dom.cat.n_objects() {
            return Err(Error::IncompleteData("degree part must cover every object".into()));
        }
        let index = &dom.index;
        for (x, &d) in deg.iter().enumerate() {
            if d >= index.n_morphisms() {
                return Err(Error::UnresolvedReference(format!("degree part at object {x}")));
            }
            let m = &index.morphisms[d];
            let p_x = dom.degree_of(x);
            let pf_x = cod.degree_of(functor.on_obj(x));
            let ok = match variance {
                Variance::Left => m.dom == pf_x && m.cod == p_x,
                Variance::Right => m.dom == p_x && m.cod == pf_x,
            };
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "degree part at object {x} has the wrong endpoints"
                )));
            }
        }
        Ok(GradedMorphism {
            dom,
            cod,
            variance,
            functor,
            deg,
        })
    }

    pub fn identity(g: &GradedVCat) -> GradedMorphism {
        let deg = (0..g.cat.n_objects())
            .map(|x| g.index.identity(g.degree_of(x)))
            .collect();
        GradedMorphism::new(
            g.clone(),
            g.clone(),
            Variance::Left,
            VFunctor::identity(&g.cat),
            deg,
        )
        .unwrap()
    }

    /// The comparison cell `φ(x) = 1_{F x} ⊗ φ₂(x)` as an enriched
    /// natural transformation between the two coaction routes.
    fn comparison_nat(&self) -> Result<VNatTrans> {
        let (t_cod, mu_cod) = self.cod.coaction_functor()?;
        let (_, mu_dom) = self.dom.coaction_functor()?;
        let c = self.dom.coalgebra();
        let id_c = VFunctor::identity(&c);
        let f_tensor_1 = tensor_vfunctors(&self.functor, &id_c)?;
        let route_a = mu_cod.compose(&self.functor)?; // μ' ∘ F
        let route_b = f_tensor_1.compose(&mu_dom)?; // (F⊗1) ∘ μ
        let kind = self.dom.kind();
        let component = |x: usize| {
            let fx = self.functor.on_obj(x);
            let id_elem = self.cod.cat.id(fx).clone();
            let m = &self.dom.index.morphisms[self.deg[x]];
            let chom = c.hom(m.dom, m.cod);
            let pos = self
                .dom
                .index
                .mors_between(m.dom, m.cod)
                .iter()
                .position(|&u| u == self.deg[x])
                .unwrap();
            tensor_mor(&id_elem, &basis_elem(chom, pos))
                .unwrap()
                .compose(&unit_split(kind))
        };
        let _ = &t_cod;
        match self.variance {
            Variance::Left => VNatTrans::new(route_a, route_b, component),
            Variance::Right => VNatTrans::new(route_b, route_a, component),
        }
    }

    /// Validate: the functor satisfies the enriched functor laws and the
    /// induced comparison cell is an enriched natural transformation.
    pub fn validate(&self) -> LawReport {
        let fr = self.functor.validate();
        if !fr.passed() {
            return fr;
        }
        match self.comparison_nat() {
            Ok(nat) => fr.and_then(|| nat.validate()),
            Err(e) => LawReport::fail(fr.checks, "comparison cell shape", "graded morphism", e.to_string(), ""),
        }
    }

    /// Compose `self ∘ other` by pasting the comodule squares; the degree
    /// parts compose through `I` in pasting order.
    pub fn compose(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        if self.variance != other.variance {
            return Err(Error::ShapeMismatch("graded morphism variance mismatch".into()));
        }
        if other.cod != self.dom {
            return Err(Error::ShapeMismatch("graded morphisms not composable".into()));
        }
        let functor = self.functor.compose(&other.functor)?;
        let index = &other.dom.index;
        let deg = (0..other.dom.cat.n_objects())
            .map(|x| {
                let fx = other.functor.on_obj(x);
                match self.variance {
                    // p''(GFx) --ψ₂(Fx)--> p'(Fx) --φ₂(x)--> p(x)
                    Variance::Left => index.compose(other.deg[x], self.deg[fx]),
                    // p(x) --φ₂(x)--> p'(Fx) --ψ₂(Fx)--> p''(GFx)
                    Variance::Right => index.compose(self.deg[fx], other.deg[x]),
                }
            })
            .collect();
        GradedMorphism::new(
            other.dom.clone(),
            self.cod.clone(),
            self.variance,
            functor,
            deg,
        )
    }
}

/// A 2-morphism of graded categories: an enriched natural transformation
/// compatible with both comparison cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graded2Morphism {
    pub dom: GradedMorphism,
    pub cod: GradedMorphism,
    pub nat: VNatTrans,
}

impl Graded2Morphism {
    pub fn new(dom: GradedMorphism, cod: GradedMorphism, nat: VNatTrans) -> Result<Graded2Morphism> {
        if dom.dom != cod.dom || dom.cod != cod.cod || dom.variance != cod.variance {
            return Err(Error::ShapeMismatch("graded 2-morphism between non-parallel morphisms".into()));
        }
        if nat.dom != dom.functor || nat.cod != cod.functor {
            return Err(Error::ShapeMismatch("graded 2-morphism underlying transformation".into()));
        }
        Ok(Graded2Morphism { dom, cod, nat })
    }

    pub fn validate(&self) -> LawReport {
        let nr = self.nat.validate();
        if !nr.passed() {
            return nr;
        }
        let build = || -> Result<(VNatTrans, VNatTrans)> {
            let phi = self.dom.comparison_nat()?;
            let psi = self.cod.comparison_nat()?;
            let (_, mu_dom) = self.dom.dom.coaction_functor()?;
            let (_, mu_cod) = self.dom.cod.coaction_functor()?;
            let c = self.dom.dom.coalgebra();
            let id_c = VFunctor::identity(&c);
            let xi_tensor_1 = tensor_nats(&self.nat, &VNatTrans::identity(&id_c))?;
            match self.dom.variance {
                Variance::Left => {
                    // (ξ⊗1)·μ ∘ φ  =  ψ ∘ μ'·ξ
                    let lhs = VNatTrans::vcompose(
                        &VNatTrans::whisker_pre(&xi_tensor_1, &mu_dom)?,
                        &phi,
                    )?;
                    let rhs = VNatTrans::vcompose(
                        &psi,
                        &VNatTrans::whisker_post(&mu_cod, &self.nat)?,
                    )?;
                    Ok((lhs, rhs))
                }
                Variance::Right => {
                    // μ'·ξ ∘ φ  =  ψ ∘ (ξ⊗1)·μ
                    let lhs = VNatTrans::vcompose(
                        &VNatTrans::whisker_post(&mu_cod, &self.nat)?,
                        &phi,
                    )?;
                    let rhs = VNatTrans::vcompose(
                        &psi,
                        &VNatTrans::whisker_pre(&xi_tensor_1, &mu_dom)?,
                    )?;
                    Ok((lhs, rhs))
                }
            }
        };
        match build() {
            Ok((lhs, rhs)) => {
                let n = self.dom.dom.cat.n_objects();
                let mut checks = nr.checks;
                for x in 0..n {
                    checks += 1;
                    if lhs.component(x) != rhs.component(x) {
                        return LawReport::fail(
                            checks,
                            "graded 2-morphism square",
                            format!("object {}", self.dom.dom.cat.objects[x]),
                            lhs.component(x).to_string(),
                            rhs.component(x).to_string(),
                        );
                    }
                }
                LawReport::pass(checks)
            }
            Err(e) => LawReport::fail(nr.checks, "graded 2-morphism shape", "2-morphism", e.to_string(), ""),
        }
    }

    pub fn compose(&self, other: &Graded2Morphism) -> Result<Graded2Morphism> {
        Graded2Morphism::new(
            other.dom.clone(),
            self.cod.clone(),
            VNatTrans::vcompose(&self.nat, &other.nat)?,
        )
    }
}

/// For the finset base a grading is the same thing as an enriched functor
/// into `I⊗1`; this direction collapses each component to its tag.
pub fn functor_from_grading(g: &GradedVCat) -> Result<VFunctor> {
    if g.kind() != BaseKind::FinSet {
        return Err(Error::Unsupported(
            "functor_from_grading needs the finset base".into(),
        ));
    }
    let c = g.coalgebra();
    let n = g.cat.n_objects();
    VFunctor::new(g.cat.clone(), c.clone(), g.degree.clone(), |x, y| {
        let d = g.decomposition(x, y);
        let chom = c.hom(g.degree[x], g.degree[y]);
        let cone: Vec<BaseMorphism> = d
            .parts
            .iter()
            .enumerate()
            .map(|(u, part)| {
                BaseMorphism::from_map(part.clone(), chom.clone(), vec![u; part.size()])
            })
            .collect();
        let _ = n;
        d.copair_cone(&cone, chom).unwrap()
    })
}

/// ... and conversely, an enriched functor `p : X → I⊗1` grades `X` by
/// the fibers of `p` on each hom set.
pub fn grading_from_functor(cat: &VCat, index: &IndexCat, p: &VFunctor) -> Result<GradedVCat> {
    if cat.kind != BaseKind::FinSet {
        return Err(Error::Unsupported(
            "grading_from_functor needs the finset base".into(),
        ));
    }
    let c = free_vcat(BaseKind::FinSet, index);
    if p.dom != *cat || p.cod != c {
        return Err(Error::ShapeMismatch(
            "functor must go from the category to I⊗1".into(),
        ));
    }
    let n = cat.n_objects();
    let mut dec = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mors = index.mors_between(p.obj_map[x], p.obj_map[y]);
            let mut parts = Vec::new();
            let mut injections = Vec::new();
            for (pos, _) in mors.iter().enumerate() {
                let indices: Vec<usize> = (0..cat.hom(x, y).size())
                    .filter(|&e| p.on_hom(x, y).apply(e) == pos)
                    .collect();
                let (part, inj) = subset_object(cat.hom(x, y), &indices);
                parts.push(part);
                injections.push(inj);
            }
            dec.push(Decomposition {
                ambient: cat.hom(x, y).clone(),
                tags: mors
                    .iter()
                    .map(|&u| index.morphisms[u].name.clone())
                    .collect(),
                parts,
                injections,
            });
        }
    }
    GradedVCat::new(cat.clone(), index.clone(), p.obj_map.clone(), dec)
}

/// Convert every part of every decomposition to its canonical subobject
/// presentation, for comparisons across construction routes.
pub fn canonicalize_grading(g: &GradedVCat) -> GradedVCat {
    let n = g.cat.n_objects();
    let mut dec = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let d = g.decomposition(x, y);
            let mut parts = Vec::new();
            let mut injections = Vec::new();
            for inj in &d.injections {
                let (part, canon) = base::image_subobject(inj);
                parts.push(part);
                injections.push(canon);
            }
            dec.push(Decomposition {
                ambient: d.ambient.clone(),
                tags: d.tags.clone(),
                parts,
                injections,
            });
        }
    }
    GradedVCat::new(g.cat.clone(), g.index.clone(), g.degree.clone(), dec).unwrap()
}
