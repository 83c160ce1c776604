//! Units, counits, and triangle identities for the two adjunctions.
//!
//! The gluing construction is left adjoint in two ways:
//!
//! * to the comma-fiber 2-functor: morphisms of graded categories out of
//!   `Gr(X)` correspond to transformations `X → Γ⃖(μ)`. The unit embeds
//!   `X(i)` onto the objects `((x,i), 1_i)` of the comma fiber; the counit
//!   projects `(e, u, i) ↦ e` with degree part `u`.
//! * to the diagonal: enriched functors `Gr(X) → A` correspond to
//!   transformations `X → Δ(A)`. The counit collapses all components of
//!   `Gr(Δ(A))` through the counit of `I⊗1`.
//!
//! All arithmetic is exact, so both triangle identities are checked as
//! strict table equalities, and for the diagonal adjunction the
//! hom-category isomorphism itself can be verified by exhaustive
//! enumeration at finset scale.

use crate::base::{self, factor_through_mono, BaseKind, BaseMorphism};
use crate::comodule::{GradedMorphism, GradedVCat, Variance};
use crate::diagram::{diagonal, LeftTransf, OplaxDiagram, TransfMorphism};
use crate::error::{Error, Result};
use crate::fibers::{gamma_left_unvalidated, gamma_on_morphism, left_comma_fiber};
use crate::grothendieck::{gr_on_2morphism, gr_on_morphism, grothendieck_unvalidated};
use crate::report::LawReport;
use crate::vcat::{IndexCat, VCat, VFunctor, VNatTrans};

/// Packaged unit/counit data for one of the two adjunctions.
#[derive(Debug, Clone)]
pub enum AdjunctionWitness {
    /// `Gr ⊣ Γ⃖` at an oplax diagram and a graded category.
    GrGamma {
        unit: LeftTransf,
        counit: GradedMorphism,
    },
    /// `Gr ⊣ Δ` at an oplax diagram and a plain category.
    GrDelta { unit: LeftTransf, counit: VFunctor },
}

impl AdjunctionWitness {
    /// Validate the unit and counit in their home 2-categories.
    pub fn validate(&self) -> LawReport {
        match self {
            AdjunctionWitness::GrGamma { unit, counit } => {
                unit.validate().and_then(|| counit.validate())
            }
            AdjunctionWitness::GrDelta { unit, counit } => {
                unit.validate().and_then(|| counit.validate())
            }
        }
    }
}

/// The unit `η_X : X → Γ⃖(μ_X)`: each `X(i)` embeds onto the objects
/// `((x,i), 1_i)`, with hom maps through the `1_i`-tagged component, and
/// the square at `u` picks the identity element of `X(j)(X(u)x, X(u)x)`
/// in the `u`-tagged component.
pub fn unit_gr_gamma(x: &OplaxDiagram) -> Result<LeftTransf> {
    let report = x.validate();
    if !report.passed() {
        return Err(Error::LawViolation {
            entity: "oplax diagram".into(),
            report: report.to_string(),
        });
    }
    unit_gr_gamma_unvalidated(x)
}

pub fn unit_gr_gamma_unvalidated(x: &OplaxDiagram) -> Result<LeftTransf> {
    let gr = grothendieck_unvalidated(x);
    let gamma = gamma_left_unvalidated(&gr.graded)?;
    let index = &x.index;
    let fibers: Vec<_> = (0..index.n_objects())
        .map(|i| left_comma_fiber(&gr.graded, i))
        .collect::<Result<Vec<_>>>()?;
    let components: Vec<VFunctor> = (0..index.n_objects())
        .map(|i| {
            let fiber = &fibers[i];
            let idm = index.identity(i);
            let obj_map: Vec<usize> = (0..x.on_obj[i].n_objects())
                .map(|xo| {
                    let e = gr.pairs.iter().position(|&p| p == (i, xo)).unwrap();
                    fiber.objects.iter().position(|&o| o == (e, idm)).unwrap()
                })
                .collect();
            VFunctor::new(
                x.on_obj[i].clone(),
                fiber.cat.clone(),
                obj_map.clone(),
                |xo, yo| {
                    let e = gr.pairs.iter().position(|&p| p == (i, xo)).unwrap();
                    let e2 = gr.pairs.iter().position(|&p| p == (i, yo)).unwrap();
                    let xi = &x.on_obj[i];
                    // X(i)(x,x') → X(i)(X(1_i)x, x'), then into the glued
                    // hom at tag 1_i, then into the comma hom
                    let eta_elem = x.unit[i].component(xo);
                    let x1x = x.on_mor[idm].on_obj(xo);
                    let pulled = xi.pullback_elem(eta_elem, x1x, xo, yo).unwrap();
                    let d = gr.graded.decomposition(e, e2);
                    let pos = index
                        .mors_between(i, i)
                        .iter()
                        .position(|&m| m == idm)
                        .unwrap();
                    let lifted = d.injections[pos].compose(&pulled);
                    let incl =
                        &fiber.inclusions[obj_map[xo] * fiber.objects.len() + obj_map[yo]];
                    factor_through_mono(incl, &lifted)
                        .expect("the identity-tagged component lies in the comma hom")
                },
            )
        })
        .collect::<Result<_>>()?;
    let squares: Vec<VNatTrans> = (0..index.n_morphisms())
        .map(|u| {
            let m = &index.morphisms[u];
            let (i, j) = (m.dom, m.cod);
            let left = gamma.on_mor[u].compose(&components[i])?;
            let right = components[j].compose(&x.on_mor[u])?;
            let fiber = &fibers[j];
            VNatTrans::new(left.clone(), right.clone(), |xo| {
                // element of the comma hom ((x,i),u) → ((X(u)x,j),1_j):
                // the identity of X(j)(X(u)x, X(u)x) in the u-component
                let e = gr.pairs.iter().position(|&p| p == (i, xo)).unwrap();
                let ux = x.on_mor[u].on_obj(xo);
                let e2 = gr.pairs.iter().position(|&p| p == (j, ux)).unwrap();
                let d = gr.graded.decomposition(e, e2);
                let pos = index
                    .mors_between(i, j)
                    .iter()
                    .position(|&mm| mm == u)
                    .unwrap();
                let elem = d.injections[pos].compose(x.on_obj[j].id(ux));
                let incl =
                    &fiber.inclusions[left.on_obj(xo) * fiber.objects.len() + right.on_obj(xo)];
                factor_through_mono(incl, &elem)
                    .expect("unit square element lies in the comma hom")
            })
        })
        .collect::<Result<_>>()?;
    LeftTransf::new(x.clone(), gamma, components, squares)
}

/// The counit `ε_μ : Gr(Γ⃖(μ)) → (E, μ)`: on objects `(e,u,i) ↦ e`, on
/// homs the comma inclusions copaired over the glued coproduct, with
/// degree part `φ₂(e,u,i) = u`.
pub fn counit_gr_gamma(g: &GradedVCat) -> Result<GradedMorphism> {
    let report = g.validate();
    if !report.passed() {
        return Err(Error::LawViolation {
            entity: "grading".into(),
            report: report.to_string(),
        });
    }
    counit_gr_gamma_unvalidated(g)
}

pub fn counit_gr_gamma_unvalidated(g: &GradedVCat) -> Result<GradedMorphism> {
    let gamma = gamma_left_unvalidated(g)?;
    let gr = grothendieck_unvalidated(&gamma);
    let index = &g.index;
    let fibers: Vec<_> = (0..index.n_objects())
        .map(|i| left_comma_fiber(g, i))
        .collect::<Result<Vec<_>>>()?;
    // Gr(Γ) object a = (i, z) with z a comma object (e, u)
    let obj_map: Vec<usize> = gr
        .pairs
        .iter()
        .map(|&(i, z)| fibers[i].objects[z].0)
        .collect();
    let n = gr.pairs.len();
    let mut hom_maps: Vec<BaseMorphism> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (i, za) = gr.pairs[a];
            let (i2, zb) = gr.pairs[b];
            let (e, u) = fibers[i].objects[za];
            let (e2, _) = fibers[i2].objects[zb];
            let d = gr.graded.decomposition(a, b);
            // component v : i → i' is the comma hom Γ(i')((e, v∘u), (e',u'))
            // included in E(e,e')
            let legs: Vec<BaseMorphism> = index
                .mors_between(i, i2)
                .iter()
                .map(|&v| {
                    let vu = index.compose(v, u);
                    let src = fibers[i2]
                        .objects
                        .iter()
                        .position(|&o| o == (e, vu))
                        .unwrap();
                    fibers[i2].inclusions[src * fibers[i2].objects.len() + zb].clone()
                })
                .collect();
            hom_maps.push(d.copair_cone(&legs, g.cat.hom(e, e2))?);
        }
    }
    let functor = VFunctor::new(gr.graded.cat.clone(), g.cat.clone(), obj_map, |a, b| {
        hom_maps[a * n + b].clone()
    })?;
    let deg: Vec<usize> = gr
        .pairs
        .iter()
        .map(|&(i, z)| {
            let _ = i;
            fibers[i].objects[z].1
        })
        .collect();
    GradedMorphism::new(gr.graded, g.clone(), Variance::Left, functor, deg)
}

/// Verify both triangle identities of `Gr ⊣ Γ⃖` as exact table
/// equalities: `ε_{Gr X} ∘ Gr(η_X) = 1` on the diagram side and
/// `Γ⃖(ε_μ) ∘ η_{Γ⃖(μ)} = 1` on the graded side.
pub fn check_triangles_gr_gamma(x: &OplaxDiagram, g: &GradedVCat) -> Result<LawReport> {
    let mut checks = 0;
    // triangle 1 at X
    let eta = unit_gr_gamma_unvalidated(x)?;
    let gr_eta = gr_on_morphism(&eta)?;
    let gr_x = grothendieck_unvalidated(x);
    let eps_at_gr = counit_gr_gamma_unvalidated(&gr_x.graded)?;
    let composite = eps_at_gr.compose(&gr_eta)?;
    let identity = GradedMorphism::identity(&gr_x.graded);
    checks += 1;
    if composite.functor != identity.functor || composite.deg != identity.deg {
        return Ok(LawReport::fail(
            checks,
            "triangle ε∘Gr(η) = 1",
            "diagram side",
            "ε_{Gr X} ∘ Gr(η_X)",
            "identity",
        ));
    }
    // triangle 2 at μ
    let gamma = gamma_left_unvalidated(g)?;
    let eta_at_gamma = unit_gr_gamma_unvalidated(&gamma)?;
    let eps = counit_gr_gamma_unvalidated(g)?;
    let gamma_eps = gamma_on_morphism(&eps)?;
    let composite = gamma_eps.compose(&eta_at_gamma)?;
    let identity = LeftTransf::identity(&gamma);
    checks += 1;
    if composite.components != identity.components || composite.squares != identity.squares {
        return Ok(LawReport::fail(
            checks,
            "triangle Γ(ε)∘η = 1",
            "graded side",
            "Γ⃖(ε_μ) ∘ η_{Γ⃖(μ)}",
            "identity",
        ));
    }
    Ok(LawReport::pass(checks))
}

/// The unit `η_X : X → Δ(Gr(X))`: component inclusions into the glued
/// category, with squares given by identity elements in the `u`-tagged
/// components.
pub fn unit_gr_delta(x: &OplaxDiagram) -> Result<LeftTransf> {
    let report = x.validate();
    if !report.passed() {
        return Err(Error::LawViolation {
            entity: "oplax diagram".into(),
            report: report.to_string(),
        });
    }
    unit_gr_delta_unvalidated(x)
}

pub fn unit_gr_delta_unvalidated(x: &OplaxDiagram) -> Result<LeftTransf> {
    let gr = grothendieck_unvalidated(x);
    let index = &x.index;
    let delta = diagonal(&gr.graded.cat, index);
    let components: Vec<VFunctor> = (0..index.n_objects())
        .map(|i| {
            let idm = index.identity(i);
            let obj_map: Vec<usize> = (0..x.on_obj[i].n_objects())
                .map(|xo| gr.pairs.iter().position(|&p| p == (i, xo)).unwrap())
                .collect();
            VFunctor::new(
                x.on_obj[i].clone(),
                gr.graded.cat.clone(),
                obj_map.clone(),
                |xo, yo| {
                    let e = obj_map[xo];
                    let e2 = obj_map[yo];
                    let xi = &x.on_obj[i];
                    let eta_elem = x.unit[i].component(xo);
                    let x1x = x.on_mor[idm].on_obj(xo);
                    let pulled = xi.pullback_elem(eta_elem, x1x, xo, yo).unwrap();
                    let d = gr.graded.decomposition(e, e2);
                    let pos = index
                        .mors_between(i, i)
                        .iter()
                        .position(|&m| m == idm)
                        .unwrap();
                    d.injections[pos].compose(&pulled)
                },
            )
        })
        .collect::<Result<_>>()?;
    let squares: Vec<VNatTrans> = (0..index.n_morphisms())
        .map(|u| {
            let m = &index.morphisms[u];
            let (i, j) = (m.dom, m.cod);
            let left = delta.on_mor[u].compose(&components[i])?;
            let right = components[j].compose(&x.on_mor[u])?;
            VNatTrans::new(left, right, |xo| {
                let e = gr.pairs.iter().position(|&p| p == (i, xo)).unwrap();
                let ux = x.on_mor[u].on_obj(xo);
                let e2 = gr.pairs.iter().position(|&p| p == (j, ux)).unwrap();
                let d = gr.graded.decomposition(e, e2);
                let pos = index
                    .mors_between(i, j)
                    .iter()
                    .position(|&mm| mm == u)
                    .unwrap();
                d.injections[pos].compose(x.on_obj[j].id(ux))
            })
        })
        .collect::<Result<_>>()?;
    LeftTransf::new(x.clone(), delta, components, squares)
}

/// The counit `ε_A : Gr(Δ(A)) → A`: forget the tags (finset) or sum the
/// components (finvect) through the counit of `I⊗1`.
pub fn counit_gr_delta(a: &VCat, index: &IndexCat) -> Result<VFunctor> {
    let delta = diagonal(a, index);
    let gr = grothendieck_unvalidated(&delta);
    let n = gr.pairs.len();
    let obj_map: Vec<usize> = gr.pairs.iter().map(|&(_, ao)| ao).collect();
    let mut hom_maps = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let (_, ao) = gr.pairs[p];
            let (_, bo) = gr.pairs[q];
            let d = gr.graded.decomposition(p, q);
            let legs: Vec<BaseMorphism> = d
                .parts
                .iter()
                .map(|part| {
                    debug_assert_eq!(part, a.hom(ao, bo));
                    BaseMorphism::identity(part)
                })
                .collect();
            hom_maps.push(d.copair_cone(&legs, a.hom(ao, bo))?);
        }
    }
    VFunctor::new(gr.graded.cat.clone(), a.clone(), obj_map, |p, q| {
        hom_maps[p * n + q].clone()
    })
}

/// Verify both triangle identities of `Gr ⊣ Δ` as strict equalities:
/// `ε_{Gr X} ∘ Gr(η_X) = 1_{Gr X}` and `Δ(ε_A) ∘ η_{Δ(A)} = 1_{Δ(A)}`.
pub fn check_triangles_gr_delta(x: &OplaxDiagram, a: &VCat) -> Result<LawReport> {
    let mut checks = 0;
    let eta = unit_gr_delta_unvalidated(x)?;
    let gr_eta = gr_on_morphism(&eta)?;
    let gr_x = grothendieck_unvalidated(x);
    let eps_at_gr = counit_gr_delta(&gr_x.graded.cat, &x.index)?;
    let composite = eps_at_gr.compose(&gr_eta.functor)?;
    checks += 1;
    if composite != VFunctor::identity(&gr_x.graded.cat) {
        return Ok(LawReport::fail(
            checks,
            "triangle ε∘Gr(η) = 1",
            "diagram side",
            "ε_{Gr X} ∘ Gr(η_X)",
            "identity functor",
        ));
    }
    // second triangle at A over the same index category
    let delta_a = diagonal(a, &x.index);
    let eta_at_delta = unit_gr_delta_unvalidated(&delta_a)?;
    let eps_a = counit_gr_delta(a, &x.index)?;
    let delta_eps = lift_to_diagonal_transf(&eps_a, &x.index)?;
    let composite = delta_eps.compose(&eta_at_delta)?;
    let identity = LeftTransf::identity(&delta_a);
    checks += 1;
    if composite.components != identity.components || composite.squares != identity.squares {
        return Ok(LawReport::fail(
            checks,
            "triangle Δ(ε)∘η = 1",
            "category side",
            "Δ(ε_A) ∘ η_{Δ(A)}",
            "identity",
        ));
    }
    Ok(LawReport::pass(checks))
}

/// `Δ(f)` as a left transformation between constant diagrams.
pub fn lift_to_diagonal_transf(f: &VFunctor, index: &IndexCat) -> Result<LeftTransf> {
    let dom = diagonal(&f.dom, index);
    let cod = diagonal(&f.cod, index);
    let components = vec![f.clone(); index.n_objects()];
    let squares = (0..index.n_morphisms())
        .map(|_| VNatTrans::identity(f))
        .collect();
    LeftTransf::new(dom, cod, components, squares)
}

/// Enumerate all enriched functors between finset categories, with a
/// budget on the number of candidate assignments examined.
pub fn enumerate_functors(dom: &VCat, cod: &VCat, budget: &mut usize) -> Result<Vec<VFunctor>> {
    if dom.kind != BaseKind::FinSet || cod.kind != BaseKind::FinSet {
        return Err(Error::Unsupported("functor enumeration needs the finset base".into()));
    }
    let n = dom.n_objects();
    if n == 0 {
        return Ok(vec![VFunctor::new(dom.clone(), cod.clone(), vec![], |_, _| {
            unreachable!()
        })?]);
    }
    if cod.n_objects() == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut obj_map = vec![0usize; n];
    'objects: loop {
        // enumerate hom maps for this object map
        let mut pools: Vec<Vec<BaseMorphism>> = Vec::with_capacity(n * n);
        let mut feasible = true;
        for x in 0..n {
            for y in 0..n {
                let dom_h = dom.hom(x, y);
                let cod_h = cod.hom(obj_map[x], obj_map[y]);
                if dom_h.size() > 0 && cod_h.size() == 0 {
                    feasible = false;
                    break;
                }
                let total = cod_h.size().max(1).pow(dom_h.size() as u32);
                let mut maps = Vec::with_capacity(total);
                if dom_h.size() == 0 {
                    maps.push(BaseMorphism::from_map(dom_h.clone(), cod_h.clone(), vec![]));
                } else {
                    for code in 0..total {
                        let mut c = code;
                        let mut map = Vec::with_capacity(dom_h.size());
                        for _ in 0..dom_h.size() {
                            map.push(c % cod_h.size());
                            c /= cod_h.size();
                        }
                        maps.push(BaseMorphism::from_map(dom_h.clone(), cod_h.clone(), map));
                    }
                }
                pools.push(maps);
            }
            if !feasible {
                break;
            }
        }
        if feasible {
            let mut picks = vec![0usize; n * n];
            'maps: loop {
                if *budget == 0 {
                    return Err(Error::SizeCap("functor enumeration budget exhausted".into()));
                }
                *budget -= 1;
                let cand = VFunctor::new(dom.clone(), cod.clone(), obj_map.clone(), |x, y| {
                    pools[x * n + y][picks[x * n + y]].clone()
                })?;
                if cand.validate().passed() {
                    out.push(cand);
                }
                let mut k = n * n;
                loop {
                    if k == 0 {
                        break 'maps;
                    }
                    k -= 1;
                    picks[k] += 1;
                    if picks[k] < pools[k].len() {
                        continue 'maps;
                    }
                    picks[k] = 0;
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                break 'objects;
            }
            k -= 1;
            obj_map[k] += 1;
            if obj_map[k] < cod.n_objects() {
                continue 'objects;
            }
            obj_map[k] = 0;
        }
    }
    Ok(out)
}

/// Enumerate all natural transformations between two parallel functors.
pub fn enumerate_nats(f: &VFunctor, g: &VFunctor, budget: &mut usize) -> Result<Vec<VNatTrans>> {
    let n = f.dom.n_objects();
    let pools: Vec<Vec<BaseMorphism>> = (0..n)
        .map(|a| {
            base::underlying_set(f.cod.hom(f.on_obj(a), g.on_obj(a)), base::default_cap())
        })
        .collect::<Result<_>>()?;
    if pools.iter().any(|p| p.is_empty()) {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut picks = vec![0usize; n];
    if n == 0 {
        out.push(VNatTrans::new(f.clone(), g.clone(), |_| unreachable!())?);
        return Ok(out);
    }
    'nats: loop {
        if *budget == 0 {
            return Err(Error::SizeCap("naturality enumeration budget exhausted".into()));
        }
        *budget -= 1;
        let cand = VNatTrans::new(f.clone(), g.clone(), |a| pools[a][picks[a]].clone())?;
        if cand.validate().passed() {
            out.push(cand);
        }
        let mut k = n;
        loop {
            if k == 0 {
                break 'nats;
            }
            k -= 1;
            picks[k] += 1;
            if picks[k] < pools[k].len() {
                continue 'nats;
            }
            picks[k] = 0;
        }
    }
    Ok(out)
}

/// Enumerate all left transformations `X → Δ(A)`.
fn enumerate_transfs_into_diagonal(
    x: &OplaxDiagram,
    a: &VCat,
    budget: &mut usize,
) -> Result<Vec<LeftTransf>> {
    let delta = diagonal(a, &x.index);
    let comp_pools: Vec<Vec<VFunctor>> = x
        .on_obj
        .iter()
        .map(|xi| enumerate_functors(xi, a, budget))
        .collect::<Result<_>>()?;
    if comp_pools.iter().any(|p| p.is_empty()) {
        return Ok(vec![]);
    }
    let n = x.index.n_objects();
    let mut out = Vec::new();
    let mut picks = vec![0usize; n];
    'comps: loop {
        let components: Vec<VFunctor> = (0..n).map(|i| comp_pools[i][picks[i]].clone()).collect();
        // square pools per morphism
        let square_pools: Vec<Vec<VNatTrans>> = (0..x.index.n_morphisms())
            .map(|u| {
                let m = &x.index.morphisms[u];
                let left = delta.on_mor[u].compose(&components[m.dom])?;
                let right = components[m.cod].compose(&x.on_mor[u])?;
                enumerate_nats(&left, &right, budget)
            })
            .collect::<Result<_>>()?;
        if square_pools.iter().all(|p| !p.is_empty()) {
            let nm = x.index.n_morphisms();
            let mut spicks = vec![0usize; nm];
            'squares: loop {
                if *budget == 0 {
                    return Err(Error::SizeCap("transformation enumeration budget exhausted".into()));
                }
                *budget -= 1;
                let squares: Vec<VNatTrans> =
                    (0..nm).map(|u| square_pools[u][spicks[u]].clone()).collect();
                let cand = LeftTransf::new(x.clone(), delta.clone(), components.clone(), squares)?;
                if cand.validate().passed() {
                    out.push(cand);
                }
                let mut k = nm;
                loop {
                    if k == 0 {
                        break 'squares;
                    }
                    k -= 1;
                    spicks[k] += 1;
                    if spicks[k] < square_pools[k].len() {
                        continue 'squares;
                    }
                    spicks[k] = 0;
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                break 'comps;
            }
            k -= 1;
            picks[k] += 1;
            if picks[k] < comp_pools[k].len() {
                continue 'comps;
            }
            picks[k] = 0;
        }
    }
    Ok(out)
}

/// Counts and round-trip outcome of the exhaustive hom-category
/// comparison for `Gr ⊣ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBijectionReport {
    /// enriched functors `Gr(X) → A`
    pub functor_count: usize,
    /// left transformations `X → Δ(A)`
    pub transf_count: usize,
    /// natural transformations between the functors (2-cells, total)
    pub functor_2cells: usize,
    /// morphisms of transformations (2-cells, total)
    pub transf_2cells: usize,
    /// both round trips are identities on 1-cells and 2-cells
    pub bijective: bool,
}

/// Exhaustively verify that `Gr ⊣ Δ` is an isomorphism of hom-categories
/// at `(X, A)`: the two adjunction maps are mutually inverse on functors
/// and on 2-cells. Finset base only; `cap` bounds the enumeration.
pub fn enumerate_hom_bijection(
    x: &OplaxDiagram,
    a: &VCat,
    cap: usize,
) -> Result<HomBijectionReport> {
    if a.kind != BaseKind::FinSet {
        return Err(Error::Unsupported("hom enumeration needs the finset base".into()));
    }
    let mut budget = cap;
    let gr = grothendieck_unvalidated(x);
    let eta = unit_gr_delta_unvalidated(x)?;
    let eps_a = counit_gr_delta(a, &x.index)?;
    let functors = enumerate_functors(&gr.graded.cat, a, &mut budget)?;
    let transfs = enumerate_transfs_into_diagonal(x, a, &mut budget)?;

    // adjunction maps
    let to_transf = |f: &VFunctor| -> Result<LeftTransf> {
        lift_to_diagonal_transf(f, &x.index)?.compose(&eta)
    };
    let to_functor = |t: &LeftTransf| -> Result<VFunctor> {
        let glued = gr_on_morphism(t)?;
        eps_a.compose(&glued.functor)
    };

    let mut bijective = functors.len() == transfs.len();
    for f in &functors {
        let round = to_functor(&to_transf(f)?)?;
        if &round != f {
            bijective = false;
        }
    }
    for t in &transfs {
        let round = to_transf(&to_functor(t)?)?;
        if round.components != t.components || round.squares != t.squares {
            bijective = false;
        }
    }

    // 2-cells
    let mut functor_2cells = 0;
    let mut transf_2cells = 0;
    for f in &functors {
        for g in &functors {
            let nats = enumerate_nats(f, g, &mut budget)?;
            functor_2cells += nats.len();
            for xi in &nats {
                // Δ(ξ)∘η then back must give ξ
                let tf = to_transf(f)?;
                let tg = to_transf(g)?;
                let comps: Vec<VNatTrans> = (0..x.index.n_objects())
                    .map(|i| VNatTrans::whisker_pre(xi, &eta.components[i]))
                    .collect::<Result<_>>()?;
                let theta = TransfMorphism::new(tf, tg, comps)?;
                if !theta.validate().passed() {
                    bijective = false;
                    continue;
                }
                let glued = gr_on_2morphism(&theta)?;
                let back = VNatTrans::whisker_post(&eps_a, &glued.nat)?;
                if back != *xi {
                    bijective = false;
                }
            }
        }
    }
    for t in &transfs {
        for t2 in &transfs {
            // enumerate morphisms of transformations θ : t ⇒ t2
            let n = x.index.n_objects();
            let pools: Vec<Vec<VNatTrans>> = (0..n)
                .map(|i| enumerate_nats(&t.components[i], &t2.components[i], &mut budget))
                .collect::<Result<_>>()?;
            if pools.iter().any(|p| p.is_empty()) {
                continue;
            }
            let mut picks = vec![0usize; n];
            'thetas: loop {
                if budget == 0 {
                    return Err(Error::SizeCap("2-cell enumeration budget exhausted".into()));
                }
                budget -= 1;
                let comps: Vec<VNatTrans> = (0..n).map(|i| pools[i][picks[i]].clone()).collect();
                let cand = TransfMorphism::new(t.clone(), t2.clone(), comps)?;
                if cand.validate().passed() {
                    transf_2cells += 1;
                    // round trip through Gr and ε
                    let glued = gr_on_2morphism(&cand)?;
                    let as_nat = VNatTrans::whisker_post(&eps_a, &glued.nat)?;
                    let back: Vec<VNatTrans> = (0..n)
                        .map(|i| VNatTrans::whisker_pre(&as_nat, &eta.components[i]))
                        .collect::<Result<_>>()?;
                    for (i, b) in back.iter().enumerate() {
                        if b != &cand.components[i] {
                            bijective = false;
                        }
                    }
                }
                let mut k = n;
                loop {
                    if k == 0 {
                        break 'thetas;
                    }
                    k -= 1;
                    picks[k] += 1;
                    if picks[k] < pools[k].len() {
                        continue 'thetas;
                    }
                    picks[k] = 0;
                }
            }
        }
    }
    if functor_2cells != transf_2cells {
        bijective = false;
    }
    Ok(HomBijectionReport {
        functor_count: functors.len(),
        transf_count: transfs.len(),
        functor_2cells,
        transf_2cells,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagonal;
    use crate::fixtures;
    use crate::vcat::unit_vcat;

    #[test]
    fn unit_gr_gamma_validates() {
        for x in [
            fixtures::z2_on_z3(),
            fixtures::twisted_terminal_diagram(),
            diagonal(&fixtures::group_algebra(2, 2), &fixtures::arrow_category()),
        ] {
            let eta = unit_gr_gamma(&x).unwrap();
            let report = eta.validate();
            assert!(report.passed(), "{report}");
            // objects embed injectively
            for (i, f) in eta.components.iter().enumerate() {
                assert!(f.dom.n_objects() <= f.cod.n_objects());
                let _ = i;
            }
        }
    }

    #[test]
    fn unit_over_terminal_is_iso() {
        let a = fixtures::group_algebra(2, 2);
        let x = diagonal(&a, &fixtures::terminal_category());
        let eta = unit_gr_gamma(&x).unwrap();
        let f = &eta.components[0];
        assert_eq!(f.dom.n_objects(), f.cod.n_objects());
        for p in 0..f.dom.n_objects() {
            for q in 0..f.dom.n_objects() {
                assert!(f.on_hom(p, q).is_iso());
            }
        }
    }

    #[test]
    fn counit_gr_gamma_validates() {
        for g in [
            fixtures::f2_z2_graded(),
            crate::grothendieck::grothendieck(&fixtures::z2_on_z3())
                .unwrap()
                .graded,
        ] {
            let eps = counit_gr_gamma(&g).unwrap();
            let report = eps.validate();
            assert!(report.passed(), "{report}");
            // the underlying object map is surjective
            let mut hit = vec![false; g.cat.n_objects()];
            for z in 0..eps.functor.dom.n_objects() {
                hit[eps.functor.on_obj(z)] = true;
            }
            assert!(hit.into_iter().all(|h| h));
        }
    }

    #[test]
    fn counit_over_terminal_is_iso() {
        let g = fixtures::empty_graded(&fixtures::terminal_category());
        let eps = counit_gr_gamma(&g).unwrap();
        assert_eq!(eps.functor.dom.n_objects(), 0);
        // a nonempty example: the unit category trivially graded
        let one = unit_vcat(crate::base::BaseKind::FinSet);
        let dec = vec![fixtures::single_part_decomposition(one.hom(0, 0), "1")];
        let g = crate::comodule::GradedVCat::new(
            one,
            fixtures::terminal_category(),
            vec![0],
            dec,
        )
        .unwrap();
        let eps = counit_gr_gamma(&g).unwrap();
        assert_eq!(eps.functor.dom.n_objects(), 1);
        assert!(eps.functor.on_hom(0, 0).is_iso());
    }

    #[test]
    fn triangles_hold_on_fixtures() {
        let fixtures_list: Vec<(OplaxDiagram, GradedVCat)> = vec![
            (fixtures::z2_on_z3(), fixtures::f2_z2_graded()),
            (
                diagonal(&fixtures::group_algebra(2, 2), &fixtures::arrow_category()),
                crate::grothendieck::grothendieck(&fixtures::z2_on_z3())
                    .unwrap()
                    .graded,
            ),
            (
                diagonal(&unit_vcat(crate::base::BaseKind::FinSet), &fixtures::terminal_category()),
                crate::comodule::free_grading(
                    crate::base::BaseKind::FinVect { prime: 3 },
                    &fixtures::path2_category(),
                ),
            ),
            (
                fixtures::twisted_terminal_diagram(),
                crate::grothendieck::grothendieck(&fixtures::twisted_terminal_diagram())
                    .unwrap()
                    .graded,
            ),
        ];
        for (x, g) in &fixtures_list {
            let report = check_triangles_gr_gamma(x, g).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn gr_delta_triangles() {
        let a = fixtures::group_algebra(2, 2);
        let x = diagonal(&a, &fixtures::arrow_category());
        let report = check_triangles_gr_delta(&x, &a).unwrap();
        assert!(report.passed(), "{report}");
        let x2 = fixtures::z2_on_z3();
        let report = check_triangles_gr_delta(&x2, &fixtures::zn_as_vcat(3)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn gr_delta_hom_sizes() {
        // |Gr(Δ(A))((a,i),(a',j))| = |Mor_I(i,j)| · |A(a,a')|
        let a = fixtures::zn_as_vcat(2);
        let index = fixtures::cyclic_group_cat(3);
        let x = diagonal(&a, &index);
        let gr = grothendieck_unvalidated(&x);
        assert_eq!(gr.graded.cat.hom(0, 0).size(), 3 * 2);
    }

    #[test]
    fn unit_gr_delta_components_validate() {
        let x = fixtures::z2_on_z3();
        let eta = unit_gr_delta(&x).unwrap();
        assert!(eta.validate().passed());
        for f in &eta.components {
            assert!(f.validate().passed());
        }
    }

    #[test]
    fn hom_bijection_two_object_discrete() {
        // X = Δ(•) over the terminal category, A two discrete objects:
        // exactly two functors on each side
        let one = unit_vcat(crate::base::BaseKind::FinSet);
        let x = diagonal(&one, &fixtures::terminal_category());
        let a = crate::vcat::free_vcat(
            crate::base::BaseKind::FinSet,
            &fixtures::discrete_category(2),
        );
        let report = enumerate_hom_bijection(&x, &a, 100_000).unwrap();
        assert_eq!(report.functor_count, 2);
        assert_eq!(report.transf_count, 2);
        assert!(report.bijective, "{report:?}");
    }

    #[test]
    fn hom_bijection_empty_target() {
        let one = unit_vcat(crate::base::BaseKind::FinSet);
        let x = diagonal(&one, &fixtures::terminal_category());
        let a = crate::vcat::free_vcat(
            crate::base::BaseKind::FinSet,
            &fixtures::discrete_category(0),
        );
        let report = enumerate_hom_bijection(&x, &a, 100_000).unwrap();
        assert_eq!(report.functor_count, 0);
        assert_eq!(report.transf_count, 0);
        assert!(report.bijective);
    }
}
