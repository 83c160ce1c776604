//! Seeded random generators for small diagrams and comodules.
//!
//! The diagram generator samples a base realization, an index template
//! (≤ 3 objects, ≤ 6 morphisms), a fiber category (≤ 3 objects, hom
//! sizes/dims ≤ 3), actions for the template's generating morphisms, and
//! optionally a comparison-cell twist by a central invertible element.
//! Every emitted diagram is unital (`X(1_i) = Id`) so that the strict
//! fiber of its gluing reconstructs the fiber categories on the nose.

use crate::base::{self, BaseKind, BaseMorphism, BaseObject, Decomposition};
use crate::comodule::{comodule_from_decomposition, Comodule, Comonoid};
use crate::diagram::OplaxDiagram;
use crate::vcat::{free_vcat, IndexCat, VCat, VFunctor, VNatTrans};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Index templates with their generating morphisms; composites and
/// identities are filled in by the template's relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Template {
    Terminal,
    Arrow,
    Path2,
    ParallelPair,
    Span,
    Discrete2,
    Z2,
    Z3,
}

const TEMPLATES: [Template; 8] = [
    Template::Terminal,
    Template::Arrow,
    Template::Path2,
    Template::ParallelPair,
    Template::Span,
    Template::Discrete2,
    Template::Z2,
    Template::Z3,
];

fn template_index(t: Template) -> IndexCat {
    match t {
        Template::Terminal => super::terminal_category(),
        Template::Arrow => super::arrow_category(),
        Template::Path2 => super::path2_category(),
        Template::ParallelPair => super::parallel_pair_category(),
        Template::Span => super::span_category(),
        Template::Discrete2 => super::discrete_category(2),
        Template::Z2 => super::cyclic_group_cat(2),
        Template::Z3 => super::cyclic_group_cat(3),
    }
}

/// A fiber category together with a family of endofunctors closed under
/// the relations the templates need, and its central invertible elements.
struct FiberPool {
    cat: VCat,
    /// endofunctors by "exponent" in a cyclic family: endo(k) ∘ endo(j) =
    /// endo(k·j mod family_order) — multiplicative composition
    endos: Vec<VFunctor>,
    /// exponents (into `endos`) with endo² = id, for Z/2 templates
    involutions: Vec<usize>,
    /// exponents with endo³ = id, for Z/3 templates
    order3: Vec<usize>,
    /// how endofunctor indices compose: `compose[a][b]` = index of a∘b
    compose: Vec<Vec<usize>>,
    /// central invertible elements (for comparison-cell twists)
    central_units: Vec<BaseMorphism>,
    /// the exponent whose endofunctor is the identity
    id_exp: usize,
}

fn group_fiber(kind: BaseKind, n: usize) -> FiberPool {
    let cat = free_vcat(kind, &super::cyclic_group_cat(n));
    // endofunctors: multiplication by k on Z/n (monoid endomorphisms)
    let endos: Vec<VFunctor> = (0..n)
        .map(|k| {
            VFunctor::new(cat.clone(), cat.clone(), vec![0], |_, _| {
                let hom = cat.hom(0, 0);
                BaseMorphism::from_position_map(
                    hom.clone(),
                    hom.clone(),
                    (0..n).map(|x| (x * k) % n).collect(),
                )
            })
            .unwrap()
        })
        .collect();
    let involutions = (0..n).filter(|k| (k * k) % n == 1 % n).collect();
    let order3 = (0..n).filter(|k| (k * k * k) % n == 1 % n).collect();
    let compose = (0..n)
        .map(|a| (0..n).map(|b| (a * b) % n).collect())
        .collect();
    let central_units = (0..n).map(|g| base::basis_elem(cat.hom(0, 0), g)).collect();
    FiberPool {
        cat,
        endos,
        involutions,
        order3,
        compose,
        central_units,
        id_exp: 1 % n,
    }
}

fn truncated_poly_fiber(prime: u32) -> FiberPool {
    // one object, hom F_p[t]/(t²) with basis (1, t)
    let hom = BaseObject::finvect(prime, vec!["1", "t"]);
    let kind = BaseKind::FinVect { prime };
    let unit = BaseObject::unit(kind);
    let cat = VCat::build(
        kind,
        vec!["*".into()],
        |_, _| hom.clone(),
        |_, _, _| {
            // (a + bt)(c + dt) = ac + (ad + bc)t on basis pairs
            let dom = base::tensor(&hom, &hom).unwrap();
            let mut m = base::matrix::Mat::zeros(2, 4);
            m.set(0, 0, 1); // 1·1 = 1
            m.set(1, 1, 1); // 1·t = t
            m.set(1, 2, 1); // t·1 = t
            BaseMorphism::from_matrix(dom, hom.clone(), m)
        },
        |_| BaseMorphism::from_matrix(unit.clone(), hom.clone(), {
            let mut m = base::matrix::Mat::zeros(2, 1);
            m.set(0, 0, 1);
            m
        }),
    )
    .unwrap();
    // endos: t ↦ a·t for a in F_p (ring endomorphisms)
    let endos: Vec<VFunctor> = (0..prime)
        .map(|a| {
            VFunctor::new(cat.clone(), cat.clone(), vec![0], |_, _| {
                let mut m = base::matrix::Mat::zeros(2, 2);
                m.set(0, 0, 1);
                m.set(1, 1, a);
                BaseMorphism::from_matrix(cat.hom(0, 0).clone(), cat.hom(0, 0).clone(), m)
            })
            .unwrap()
        })
        .collect();
    let involutions = (0..prime as usize)
        .filter(|&a| (a * a) as u32 % prime == 1 % prime)
        .collect();
    let order3 = (0..prime as usize)
        .filter(|&a| (a * a * a) as u32 % prime == 1 % prime)
        .collect();
    let compose = (0..prime as usize)
        .map(|a| {
            (0..prime as usize)
                .map(|b| (a * b) % prime as usize)
                .collect()
        })
        .collect();
    // units a + bt with a ≠ 0 are central (the ring is commutative)
    let mut central_units = Vec::new();
    for a in 1..prime {
        for b in 0..prime {
            central_units.push(base::vector_elem(cat.hom(0, 0), &[a, b]));
        }
    }
    FiberPool {
        cat,
        endos,
        involutions,
        order3,
        compose,
        central_units,
        id_exp: 1,
    }
}

fn free_arrow_fiber(kind: BaseKind) -> FiberPool {
    let cat = free_vcat(kind, &super::arrow_category());
    // endomorphisms: identity, collapse to i, collapse to j
    let id = VFunctor::identity(&cat);
    let collapse = |target: usize| {
        VFunctor::new(cat.clone(), cat.clone(), vec![target, target], |x, y| {
            let dom = cat.hom(x, y).clone();
            let cod = cat.hom(target, target).clone();
            BaseMorphism::from_position_map(dom.clone(), cod, vec![0; dom.size()])
        })
        .unwrap()
    };
    let endos = vec![id, collapse(0), collapse(1)];
    // composition: id is neutral; collapse_a ∘ collapse_b = collapse_a
    let compose = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
    FiberPool {
        cat,
        endos,
        involutions: vec![0],
        order3: vec![0],
        compose,
        central_units: Vec::new(),
        id_exp: 0,
    }
}

fn fiber_pools(kind: BaseKind) -> Vec<FiberPool> {
    match kind {
        BaseKind::FinSet => vec![
            group_fiber(kind, 1),
            group_fiber(kind, 2),
            group_fiber(kind, 3),
            free_arrow_fiber(kind),
        ],
        BaseKind::FinVect { prime } => vec![
            group_fiber(kind, 1),
            group_fiber(kind, 2),
            group_fiber(kind, 3),
            free_arrow_fiber(kind),
            truncated_poly_fiber(prime),
        ],
    }
}

/// Draw one valid unital oplax diagram. `twist` requests non-identity
/// comparison cells where the template and fiber admit them.
pub fn diagram(rng: &mut ChaCha8Rng) -> OplaxDiagram {
    let kind = match rng.gen_range(0..3) {
        0 => BaseKind::FinSet,
        1 => BaseKind::FinVect { prime: 2 },
        _ => BaseKind::FinVect { prime: 3 },
    };
    let template = TEMPLATES[rng.gen_range(0..TEMPLATES.len())];
    let index = template_index(template);
    let pools = fiber_pools(kind);
    let pool = &pools[rng.gen_range(0..pools.len())];
    let pick = |rng: &mut ChaCha8Rng, options: &[usize]| options[rng.gen_range(0..options.len())];
    let all: Vec<usize> = (0..pool.endos.len()).collect();
    // choose endo exponents for the template's generators, then complete
    let e = pool.id_exp;
    let assignment: Vec<usize> = match template {
        Template::Terminal => vec![e],
        Template::Discrete2 => vec![e, e],
        Template::Arrow => {
            // morphisms: 1i, 1j, u
            vec![e, e, pick(rng, &all)]
        }
        Template::ParallelPair => vec![e, e, pick(rng, &all), pick(rng, &all)],
        Template::Span => vec![e, e, e, pick(rng, &all), pick(rng, &all)],
        Template::Path2 => {
            // morphisms: 1i, 1j, 1k, u, v, w = v∘u
            let u = pick(rng, &all);
            let v = pick(rng, &all);
            vec![e, e, e, u, v, pool.compose[v][u]]
        }
        Template::Z2 => {
            // morphisms: g0, g1 with g1² = g0
            let s = pick(rng, &pool.involutions);
            vec![e, s]
        }
        Template::Z3 => {
            let s = pick(rng, &pool.order3);
            vec![e, s, pool.compose[s][s]]
        }
    };
    let on_mor: Vec<VFunctor> = assignment.iter().map(|&k| pool.endos[k].clone()).collect();
    let on_obj = vec![pool.cat.clone(); index.n_objects()];
    let strict = crate::diagram::strict_diagram(&index, on_obj, on_mor)
        .expect("template assignments satisfy the relations");
    // optional twist on the path2 template: replace θ_{v,u} (and the
    // composites it forces) by a central-unit component
    if template == Template::Path2 && !pool.central_units.is_empty() && rng.gen_bool(0.5) {
        let c = pool.central_units[rng.gen_range(0..pool.central_units.len())].clone();
        let mut x = strict;
        let (u, v) = (3usize, 4usize);
        let theta = x.comp[v * 6 + u].as_ref().unwrap();
        let twisted = VNatTrans::new(theta.dom.clone(), theta.cod.clone(), |_| c.clone()).unwrap();
        if twisted.validate().passed() {
            x.comp[v * 6 + u] = Some(twisted);
            if x.validate().passed() {
                return x;
            }
            // undo if the unit is not central enough for this action
            x.comp[v * 6 + u] = Some(VNatTrans::identity(&x.on_mor[5]));
        }
        return x;
    }
    strict
}

/// A deterministic batch of valid diagrams.
pub fn diagrams(seed: u64, count: usize) -> Vec<OplaxDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| diagram(&mut rng)).collect()
}

/// Corrupt one comparison cell of a diagram so that at least one oplax
/// law must fail: the cell at `(u, 1_i)` is pinned to the identity by the
/// unit square, so pointing it at any other element breaks the laws.
/// Returns `None` when every relevant hom is too small to corrupt.
pub fn corrupt_theta(x: &OplaxDiagram, rng: &mut ChaCha8Rng) -> Option<OplaxDiagram> {
    let n = x.index.n_morphisms();
    let mut candidates = Vec::new();
    for u in 0..n {
        let i = x.index.morphisms[u].dom;
        let idm = x.index.identity(i);
        let theta = x.theta(u, idm);
        for z in 0..theta.dom.dom.n_objects() {
            let hom = theta
                .dom
                .cod
                .hom(theta.dom.on_obj(z), theta.cod.on_obj(z));
            if hom.size() >= 2 {
                candidates.push((u, idm, z));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    let (u, idm, z) = candidates[rng.gen_range(0..candidates.len())];
    let theta = x.theta(u, idm).clone();
    let home = theta.dom.cod.clone();
    let hom = home.hom(theta.dom.on_obj(z), theta.cod.on_obj(z)).clone();
    let current = theta.component(z).clone();
    let replacement = base::underlying_set(&hom, base::default_cap())
        .ok()?
        .into_iter()
        .find(|e| e != &current)?;
    let bad = VNatTrans::new(theta.dom.clone(), theta.cod.clone(), |w| {
        if w == z {
            replacement.clone()
        } else {
            theta.component(w).clone()
        }
    })
    .unwrap();
    let mut corrupted = x.clone();
    corrupted.comp[u * n + idm] = Some(bad);
    Some(corrupted)
}

/// A random finvect right comodule over a free comonoid: built from a
/// random invertible change of basis and a random tag assignment, so it
/// is valid by construction and generically not canonically presented.
pub fn comodule(rng: &mut ChaCha8Rng) -> (Comonoid, Comodule) {
    let prime = [2u32, 3, 5][rng.gen_range(0..3)];
    let kind = BaseKind::FinVect { prime };
    let n_tags = rng.gen_range(1..=4);
    let tags: Vec<String> = (0..n_tags).map(|s| format!("s{s}")).collect();
    let comonoid = Comonoid::free(kind, tags.clone());
    let dim = rng.gen_range(0..=5usize);
    let ambient = BaseObject::finvect_dim(prime, dim);
    // random invertible matrix by rejection
    let basis = loop {
        let mut m = base::matrix::Mat::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, rng.gen_range(0..prime));
            }
        }
        if m.inverse(prime).is_some() {
            break m;
        }
    };
    let assignment: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..n_tags)).collect();
    let mut parts = Vec::new();
    let mut injections = Vec::new();
    for s in 0..n_tags {
        let cols: Vec<usize> = (0..dim).filter(|&c| assignment[c] == s).collect();
        let part = BaseObject::finvect(
            prime,
            cols.iter().map(|c| format!("b{c}")).collect::<Vec<_>>(),
        );
        let mut inj = base::matrix::Mat::zeros(dim, cols.len());
        for (k, &c) in cols.iter().enumerate() {
            for r in 0..dim {
                inj.set(r, k, basis.at(r, c));
            }
        }
        injections.push(BaseMorphism::from_matrix(part.clone(), ambient.clone(), inj));
        parts.push(part);
    }
    let dec = Decomposition {
        ambient,
        tags,
        parts,
        injections,
    };
    let com = comodule_from_decomposition(&comonoid, &dec)
        .expect("randomly generated decompositions are valid");
    (comonoid, com)
}

/// Deterministic RNG for test suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
