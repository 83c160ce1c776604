//! Finite enriched categories.
//!
//! A `VCat` is a category enriched over the base: a finite object list, a
//! total hom table of base objects, a total composition table of base
//! morphisms `hom(y,z) ⊗ hom(x,y) → hom(x,z)`, and identity elements
//! `1 → hom(x,x)`. Tables are dense — zero homs are stored as empty
//! set / zero space, never skipped — so law checks cannot silently miss
//! entries.
//!
//! `IndexCat` is the small ordinary category used to index diagrams and
//! gradings. Its morphism list order is load-bearing: every coproduct of
//! hom components downstream is laid out in that order.

use crate::base::{
    self, associator, tensor, tensor_mor, unit_split, unitor_left, unitor_left_inv, unitor_right,
    unitor_right_inv, BaseKind, BaseMorphism, BaseObject,
};
use crate::error::{Error, Result};
use crate::report::LawReport;

/// A morphism of an index category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMor {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite presented category with a total composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCat {
    pub objects: Vec<String>,
    pub morphisms: Vec<IndexMor>,
    /// Dense table: `comp[v * n + u]` is `Some(v∘u)` when `cod(u) = dom(v)`.
    comp: Vec<Option<usize>>,
    /// Identity morphism index per object.
    ids: Vec<usize>,
}

impl IndexCat {
    /// Build and fully validate a finite category. `morphisms` are
    /// `(name, dom, cod)` triples; `comp` lists `((v, u), v∘u)` by name for
    /// every composable pair; `ids` names the identity at each object.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        comp: Vec<((String, String), String)>,
        ids: Vec<(String, String)>,
    ) -> Result<IndexCat> {
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return Err(Error::IncompleteData(format!("repeated object `{o}`")));
            }
        }
        let obj_index = |l: &str| {
            objects
                .iter()
                .position(|o| o == l)
                .ok_or_else(|| Error::UnresolvedReference(format!("object `{l}`")))
        };
        let mut mors = Vec::with_capacity(morphisms.len());
        for (name, dom, cod) in &morphisms {
            if mors.iter().any(|m: &IndexMor| &m.name == name) {
                return Err(Error::IncompleteData(format!("repeated morphism `{name}`")));
            }
            mors.push(IndexMor {
                name: name.clone(),
                dom: obj_index(dom)?,
                cod: obj_index(cod)?,
            });
        }
        let mor_index = |l: &str| {
            mors.iter()
                .position(|m| m.name == l)
                .ok_or_else(|| Error::UnresolvedReference(format!("morphism `{l}`")))
        };
        let n = mors.len();
        let mut table = vec![None; n * n];
        for ((v, u), w) in &comp {
            let (v, u, w) = (mor_index(v)?, mor_index(u)?, mor_index(w)?);
            if mors[u].cod != mors[v].dom {
                return Err(Error::ShapeMismatch(format!(
                    "composite `{}∘{}` declared for a non-composable pair",
                    mors[v].name, mors[u].name
                )));
            }
            table[v * n + u] = Some(w);
        }
        let mut id_table = vec![usize::MAX; objects.len()];
        for (o, m) in &ids {
            id_table[obj_index(o)?] = mor_index(m)?;
        }
        if id_table.contains(&usize::MAX) {
            return Err(Error::IncompleteData("missing identity assignment".into()));
        }
        let cat = IndexCat {
            objects,
            morphisms: mors,
            comp: table,
            ids: id_table,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.morphisms.len();
        for (o, &i) in self.ids.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.dom != o || m.cod != o {
                return Err(Error::ShapeMismatch(format!(
                    "identity `{}` is not an endomorphism of `{}`",
                    m.name, self.objects[o]
                )));
            }
        }
        for v in 0..n {
            for u in 0..n {
                let composable = self.morphisms[u].cod == self.morphisms[v].dom;
                match self.comp[v * n + u] {
                    Some(w) if composable => {
                        let wm = &self.morphisms[w];
                        if wm.dom != self.morphisms[u].dom || wm.cod != self.morphisms[v].cod {
                            return Err(Error::ShapeMismatch(format!(
                                "composite `{}∘{}` = `{}` has wrong endpoints",
                                self.morphisms[v].name, self.morphisms[u].name, wm.name
                            )));
                        }
                    }
                    Some(_) => {
                        return Err(Error::ShapeMismatch(format!(
                            "composite declared for non-composable `{}∘{}`",
                            self.morphisms[v].name, self.morphisms[u].name
                        )))
                    }
                    None if composable => {
                        return Err(Error::IncompleteData(format!(
                            "missing composite `{}∘{}`",
                            self.morphisms[v].name, self.morphisms[u].name
                        )))
                    }
                    None => {}
                }
            }
        }
        for u in 0..n {
            let m = &self.morphisms[u];
            if self.compose(self.ids[m.cod], u) != u || self.compose(u, self.ids[m.dom]) != u {
                return Err(Error::ShapeMismatch(format!(
                    "unit law fails at `{}`",
                    m.name
                )));
            }
        }
        for w in 0..n {
            for v in 0..n {
                for u in 0..n {
                    if self.morphisms[u].cod == self.morphisms[v].dom
                        && self.morphisms[v].cod == self.morphisms[w].dom
                    {
                        let left = self.compose(w, self.compose(v, u));
                        let right = self.compose(self.compose(w, v), u);
                        if left != right {
                            return Err(Error::ShapeMismatch(format!(
                                "associativity fails at ({}, {}, {})",
                                self.morphisms[w].name,
                                self.morphisms[v].name,
                                self.morphisms[u].name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `v ∘ u`; panics when not composable.
    pub fn compose(&self, v: usize, u: usize) -> usize {
        self.comp[v * self.morphisms.len() + u]
            .unwrap_or_else(|| panic!("non-composable pair ({v}, {u})"))
    }

    pub fn composable(&self, v: usize, u: usize) -> bool {
        self.morphisms[u].cod == self.morphisms[v].dom
    }

    pub fn identity(&self, obj: usize) -> usize {
        self.ids[obj]
    }

    pub fn is_identity(&self, mor: usize) -> bool {
        self.ids.contains(&mor)
    }

    /// Morphisms `i → j` in morphism-list order. This order fixes every
    /// downstream block layout.
    pub fn mors_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&u| self.morphisms[u].dom == i && self.morphisms[u].cod == j)
            .collect()
    }

    /// The opposite category: same names, endpoints swapped.
    pub fn opposite(&self) -> IndexCat {
        let n = self.morphisms.len();
        let mut comp = vec![None; n * n];
        for v in 0..n {
            for u in 0..n {
                // in I^op, v∘u is u∘v of I
                comp[v * n + u] = self.comp[u * n + v];
            }
        }
        IndexCat {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| IndexMor {
                    name: m.name.clone(),
                    dom: m.cod,
                    cod: m.dom,
                })
                .collect(),
            comp,
            ids: self.ids.clone(),
        }
    }
}

/// A finite category enriched over the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VCat {
    pub kind: BaseKind,
    pub objects: Vec<String>,
    hom: Vec<BaseObject>,
    comp: Vec<BaseMorphism>,
    id: Vec<BaseMorphism>,
}

impl VCat {
    /// Assemble a `VCat` from table closures, checking every shape.
    pub fn build(
        kind: BaseKind,
        objects: Vec<String>,
        hom: impl Fn(usize, usize) -> BaseObject,
        comp: impl Fn(usize, usize, usize) -> BaseMorphism,
        id: impl Fn(usize) -> BaseMorphism,
    ) -> Result<VCat> {
        let n = objects.len();
        let mut hom_t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let h = hom(x, y);
                if h.kind() != kind {
                    return Err(Error::TagMismatch(format!(
                        "hom({x},{y}) lives in {} but the category is {}",
                        h.kind(),
                        kind
                    )));
                }
                hom_t.push(h);
            }
        }
        let hom_at = |x: usize, y: usize| &hom_t[x * n + y];
        let mut comp_t = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let c = comp(x, y, z);
                    let expect_dom = tensor(hom_at(y, z), hom_at(x, y))?;
                    if c.dom != expect_dom || &c.cod != hom_at(x, z) {
                        return Err(Error::ShapeMismatch(format!(
                            "comp({x},{y},{z}) has the wrong shape"
                        )));
                    }
                    comp_t.push(c);
                }
            }
        }
        let mut id_t = Vec::with_capacity(n);
        for x in 0..n {
            let e = id(x);
            if e.dom != BaseObject::unit(kind) || &e.cod != hom_at(x, x) {
                return Err(Error::ShapeMismatch(format!("id({x}) has the wrong shape")));
            }
            id_t.push(e);
        }
        Ok(VCat {
            kind,
            objects,
            hom: hom_t,
            comp: comp_t,
            id: id_t,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom(&self, x: usize, y: usize) -> &BaseObject {
        &self.hom[x * self.objects.len() + y]
    }

    /// Composition `hom(y,z) ⊗ hom(x,y) → hom(x,z)`.
    pub fn comp(&self, x: usize, y: usize, z: usize) -> &BaseMorphism {
        &self.comp[(x * self.objects.len() + y) * self.objects.len() + z]
    }

    /// Identity element `1 → hom(x,x)`.
    pub fn id(&self, x: usize) -> &BaseMorphism {
        &self.id[x]
    }

    /// Compose two elements: `g ∘ f` for `f : 1 → hom(x,y)`,
    /// `g : 1 → hom(y,z)`.
    pub fn compose_elems(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: &BaseMorphism,
        f: &BaseMorphism,
    ) -> BaseMorphism {
        self.comp(x, y, z)
            .compose(&tensor_mor(g, f).unwrap())
            .compose(&unit_split(self.kind))
    }

    /// Post-composition `f_* : hom(c,a) → hom(c,b)` by an element
    /// `f : 1 → hom(a,b)`.
    pub fn pushforward(&self, f: &BaseMorphism, a: usize, b: usize, c: usize) -> Result<BaseMorphism> {
        if &f.cod != self.hom(a, b) || f.dom != BaseObject::unit(self.kind) {
            return Err(Error::BadElement(format!(
                "pushforward: element does not live in hom({a},{b})"
            )));
        }
        let id = BaseMorphism::identity(self.hom(c, a));
        Ok(self
            .comp(c, a, b)
            .compose(&tensor_mor(f, &id)?)
            .compose(&unitor_left_inv(self.hom(c, a))?))
    }

    /// Pre-composition `f^* : hom(b,c) → hom(a,c)` by an element
    /// `f : 1 → hom(a,b)`.
    pub fn pullback_elem(&self, f: &BaseMorphism, a: usize, b: usize, c: usize) -> Result<BaseMorphism> {
        if &f.cod != self.hom(a, b) || f.dom != BaseObject::unit(self.kind) {
            return Err(Error::BadElement(format!(
                "pullback: element does not live in hom({a},{b})"
            )));
        }
        let id = BaseMorphism::identity(self.hom(b, c));
        Ok(self
            .comp(a, b, c)
            .compose(&tensor_mor(&id, f)?)
            .compose(&unitor_right_inv(self.hom(b, c))?))
    }

    /// Find a two-sided inverse of an element `f : 1 → hom(x,y)` in the
    /// underlying category, if one exists. For finvect this solves the
    /// linear system `f^* g = 1_x` and checks the other triangle; for
    /// finset it scans the (small) hom set.
    pub fn invert_elem(&self, x: usize, y: usize, f: &BaseMorphism) -> Option<BaseMorphism> {
        match self.kind {
            BaseKind::FinSet => {
                let candidates = base::underlying_set(self.hom(y, x), base::default_cap()).ok()?;
                candidates.into_iter().find(|g| {
                    self.compose_elems(x, y, x, g, f) == *self.id(x)
                        && self.compose_elems(y, x, y, f, g) == *self.id(y)
                })
            }
            BaseKind::FinVect { .. } => {
                let pull = self.pullback_elem(f, x, y, x).ok()?;
                let p = self.kind.prime().unwrap();
                let g = pull
                    .matrix()
                    .unwrap()
                    .solve(self.id(x).matrix().unwrap(), p)
                    .ok()
                    .map(|m| {
                        BaseMorphism::from_matrix(
                            BaseObject::unit(self.kind),
                            self.hom(y, x).clone(),
                            m,
                        )
                    })?;
                if self.compose_elems(x, y, x, &g, f) == *self.id(x)
                    && self.compose_elems(y, x, y, f, &g) == *self.id(y)
                {
                    Some(g)
                } else {
                    None
                }
            }
        }
    }

    /// Check the enriched category laws literally against the
    /// materialized associator and unitors.
    pub fn validate(&self) -> LawReport {
        let n = self.objects.len();
        let mut checks = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        checks += 1;
                        let a = match associator(self.hom(z, w), self.hom(y, z), self.hom(x, y)) {
                            Ok(a) => a,
                            Err(e) => {
                                return LawReport::fail(
                                    checks,
                                    "associativity",
                                    format!("({x},{y},{z},{w})"),
                                    e.to_string(),
                                    "",
                                )
                            }
                        };
                        let id_xy = BaseMorphism::identity(self.hom(x, y));
                        let id_zw = BaseMorphism::identity(self.hom(z, w));
                        let route1 = self
                            .comp(x, y, w)
                            .compose(&tensor_mor(self.comp(y, z, w), &id_xy).unwrap())
                            .compose(&a);
                        let route2 = self
                            .comp(x, z, w)
                            .compose(&tensor_mor(&id_zw, self.comp(x, y, z)).unwrap());
                        if route1 != route2 {
                            return LawReport::fail(
                                checks,
                                "associativity",
                                format!(
                                    "objects ({},{},{},{})",
                                    self.objects[x], self.objects[y], self.objects[z],
                                    self.objects[w]
                                ),
                                route1.to_string(),
                                route2.to_string(),
                            );
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                checks += 2;
                let h = self.hom(x, y);
                let id_h = BaseMorphism::identity(h);
                let left = self
                    .comp(x, y, y)
                    .compose(&tensor_mor(self.id(y), &id_h).unwrap());
                if left != unitor_left(h).unwrap() {
                    return LawReport::fail(
                        checks,
                        "left unit",
                        format!("pair ({},{})", self.objects[x], self.objects[y]),
                        left.to_string(),
                        unitor_left(h).unwrap().to_string(),
                    );
                }
                let right = self
                    .comp(x, x, y)
                    .compose(&tensor_mor(&id_h, self.id(x)).unwrap());
                if right != unitor_right(h).unwrap() {
                    return LawReport::fail(
                        checks,
                        "right unit",
                        format!("pair ({},{})", self.objects[x], self.objects[y]),
                        right.to_string(),
                        unitor_right(h).unwrap().to_string(),
                    );
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// The unit `V`-category: one object, hom the monoidal unit.
pub fn unit_vcat(kind: BaseKind) -> VCat {
    let unit = BaseObject::unit(kind);
    VCat::build(
        kind,
        vec!["*".into()],
        |_, _| unit.clone(),
        |_, _, _| unitor_left(&unit).unwrap(),
        |_| BaseMorphism::identity(&unit),
    )
    .unwrap()
}

/// The free `V`-category `I⊗1` on an index category: same objects, hom
/// objects free on the morphism sets, composition induced on basis
/// elements by the composition table of `I`.
pub fn free_vcat(kind: BaseKind, index: &IndexCat) -> VCat {
    let homs: Vec<Vec<usize>> = (0..index.n_objects())
        .flat_map(|i| (0..index.n_objects()).map(move |j| (i, j)))
        .map(|(i, j)| index.mors_between(i, j))
        .collect();
    let n = index.n_objects();
    let hom_obj = |x: usize, y: usize| {
        base::free_on_set(
            kind,
            homs[x * n + y]
                .iter()
                .map(|&u| index.morphisms[u].name.clone())
                .collect::<Vec<_>>(),
        )
    };
    VCat::build(
        kind,
        index.objects.clone(),
        hom_obj,
        |x, y, z| {
            let dom = tensor(&hom_obj(y, z), &hom_obj(x, y)).unwrap();
            let vs = &homs[y * n + z];
            let us = &homs[x * n + y];
            let ws = &homs[x * n + z];
            let mut map = Vec::with_capacity(vs.len() * us.len());
            for &v in vs {
                for &u in us {
                    let w = index.compose(v, u);
                    map.push(ws.iter().position(|&m| m == w).unwrap());
                }
            }
            BaseMorphism::from_position_map(dom, hom_obj(x, z), map)
        },
        |x| {
            let ws = &homs[x * n + x];
            let pos = ws
                .iter()
                .position(|&m| m == index.identity(x))
                .expect("identity must appear among endomorphisms");
            base::basis_elem(&hom_obj(x, x), pos)
        },
    )
    .unwrap()
}

/// Tensor product of `V`-categories: objects are pairs, homs are tensors,
/// composition interleaves through the middle-four interchange.
pub fn tensor_vcats(a: &VCat, b: &VCat) -> Result<VCat> {
    if a.kind != b.kind {
        return Err(Error::TagMismatch("tensor_vcats".into()));
    }
    let nb = b.n_objects();
    let objects: Vec<String> = a
        .objects
        .iter()
        .flat_map(|x| b.objects.iter().map(move |y| format!("({x},{y})")))
        .collect();
    let split = |o: usize| (o / nb, o % nb);
    VCat::build(
        a.kind,
        objects,
        |x, y| {
            let (xa, xb) = split(x);
            let (ya, yb) = split(y);
            tensor(a.hom(xa, ya), b.hom(xb, yb)).unwrap()
        },
        |x, y, z| {
            let (xa, xb) = split(x);
            let (ya, yb) = split(y);
            let (za, zb) = split(z);
            let t = base::middle_four(
                a.hom(ya, za),
                b.hom(yb, zb),
                a.hom(xa, ya),
                b.hom(xb, yb),
            )
            .unwrap();
            tensor_mor(a.comp(xa, ya, za), b.comp(xb, yb, zb))
                .unwrap()
                .compose(&t)
        },
        |x| {
            let (xa, xb) = split(x);
            tensor_mor(a.id(xa), b.id(xb))
                .unwrap()
                .compose(&unit_split(a.kind))
        },
    )
}

/// The opposite `V`-category; composition is conjugated by the symmetry.
pub fn opposite_vcat(a: &VCat) -> VCat {
    VCat::build(
        a.kind,
        a.objects.clone(),
        |x, y| a.hom(y, x).clone(),
        |x, y, z| {
            // hom_op(y,z) ⊗ hom_op(x,y) = hom(z,y) ⊗ hom(y,x)
            let t = base::symmetry(a.hom(z, y), a.hom(y, x)).unwrap();
            a.comp(z, y, x).compose(&t)
        },
        |x| a.id(x).clone(),
    )
    .unwrap()
}

/// An enriched functor with total object and hom tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VFunctor {
    pub dom: VCat,
    pub cod: VCat,
    pub obj_map: Vec<usize>,
    hom_map: Vec<BaseMorphism>,
}

impl VFunctor {
    pub fn new(
        dom: VCat,
        cod: VCat,
        obj_map: Vec<usize>,
        hom_map_fn: impl Fn(usize, usize) -> BaseMorphism,
    ) -> Result<VFunctor> {
        if dom.kind != cod.kind {
            return Err(Error::TagMismatch("vfunctor".into()));
        }
        if obj_map.len() != dom.n_objects() || obj_map.iter().any(|&o| o >= cod.n_objects()) {
            return Err(Error::ShapeMismatch("vfunctor object map".into()));
        }
        let n = dom.n_objects();
        let mut hom_map = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let f = hom_map_fn(x, y);
                if &f.dom != dom.hom(x, y) || &f.cod != cod.hom(obj_map[x], obj_map[y]) {
                    return Err(Error::ShapeMismatch(format!(
                        "vfunctor hom map at ({x},{y})"
                    )));
                }
                hom_map.push(f);
            }
        }
        Ok(VFunctor {
            dom,
            cod,
            obj_map,
            hom_map,
        })
    }

    pub fn identity(cat: &VCat) -> VFunctor {
        VFunctor::new(
            cat.clone(),
            cat.clone(),
            (0..cat.n_objects()).collect(),
            |x, y| BaseMorphism::identity(cat.hom(x, y)),
        )
        .unwrap()
    }

    pub fn on_obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn on_hom(&self, x: usize, y: usize) -> &BaseMorphism {
        &self.hom_map[x * self.dom.n_objects() + y]
    }

    /// Apply to an element `f : 1 → hom(x,y)`.
    pub fn apply_elem(&self, x: usize, y: usize, f: &BaseMorphism) -> BaseMorphism {
        self.on_hom(x, y).compose(f)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &VFunctor) -> Result<VFunctor> {
        if other.cod != self.dom {
            return Err(Error::ShapeMismatch(
                "functor composition: middle categories differ".into(),
            ));
        }
        VFunctor::new(
            other.dom.clone(),
            self.cod.clone(),
            other.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            |x, y| {
                self.on_hom(other.obj_map[x], other.obj_map[y])
                    .compose(other.on_hom(x, y))
            },
        )
    }

    pub fn validate(&self) -> LawReport {
        let n = self.dom.n_objects();
        let mut checks = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    checks += 1;
                    let lhs = self.on_hom(x, z).compose(self.dom.comp(x, y, z));
                    let rhs = self
                        .cod
                        .comp(self.obj_map[x], self.obj_map[y], self.obj_map[z])
                        .compose(&tensor_mor(self.on_hom(y, z), self.on_hom(x, y)).unwrap());
                    if lhs != rhs {
                        return LawReport::fail(
                            checks,
                            "functor composition square",
                            format!("({x},{y},{z})"),
                            lhs.to_string(),
                            rhs.to_string(),
                        );
                    }
                }
            }
        }
        for x in 0..n {
            checks += 1;
            let lhs = self.on_hom(x, x).compose(self.dom.id(x));
            let rhs = self.cod.id(self.obj_map[x]).clone();
            if lhs != rhs {
                return LawReport::fail(
                    checks,
                    "functor identity triangle",
                    format!("object {}", self.dom.objects[x]),
                    lhs.to_string(),
                    rhs.to_string(),
                );
            }
        }
        LawReport::pass(checks)
    }
}

/// Tensor of functors `F ⊗ G : A⊗B → A'⊗B'`.
pub fn tensor_vfunctors(f: &VFunctor, g: &VFunctor) -> Result<VFunctor> {
    let dom = tensor_vcats(&f.dom, &g.dom)?;
    let cod = tensor_vcats(&f.cod, &g.cod)?;
    let nbd = g.dom.n_objects();
    let nbc = g.cod.n_objects();
    let obj_map = (0..dom.n_objects())
        .map(|o| f.obj_map[o / nbd] * nbc + g.obj_map[o % nbd])
        .collect();
    VFunctor::new(dom, cod, obj_map, |x, y| {
        tensor_mor(
            f.on_hom(x / nbd, y / nbd),
            g.on_hom(x % nbd, y % nbd),
        )
        .unwrap()
    })
}

/// An enriched natural transformation between parallel functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VNatTrans {
    pub dom: VFunctor,
    pub cod: VFunctor,
    components: Vec<BaseMorphism>,
}

impl VNatTrans {
    pub fn new(
        dom: VFunctor,
        cod: VFunctor,
        component: impl Fn(usize) -> BaseMorphism,
    ) -> Result<VNatTrans> {
        if dom.dom != cod.dom || dom.cod != cod.cod {
            return Err(Error::ShapeMismatch(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        let n = dom.dom.n_objects();
        let kind = dom.dom.kind;
        let mut components = Vec::with_capacity(n);
        for a in 0..n {
            let c = component(a);
            let expect = dom.cod.hom(dom.obj_map[a], cod.obj_map[a]);
            if c.dom != BaseObject::unit(kind) || &c.cod != expect {
                return Err(Error::ShapeMismatch(format!(
                    "component at object {a} has the wrong shape"
                )));
            }
            components.push(c);
        }
        Ok(VNatTrans {
            dom,
            cod,
            components,
        })
    }

    pub fn identity(f: &VFunctor) -> VNatTrans {
        VNatTrans::new(f.clone(), f.clone(), |a| {
            f.cod.id(f.obj_map[a]).clone()
        })
        .unwrap()
    }

    pub fn component(&self, a: usize) -> &BaseMorphism {
        &self.components[a]
    }

    /// Enriched naturality: both unitor routes around the square agree.
    pub fn validate(&self) -> LawReport {
        let f = &self.dom;
        let g = &self.cod;
        let a_cat = &f.dom;
        let b_cat = &f.cod;
        let n = a_cat.n_objects();
        let mut checks = 0;
        for x in 0..n {
            for y in 0..n {
                checks += 1;
                let h = a_cat.hom(x, y);
                // ∘ ∘ (g₁ ⊗ φ(x)) ∘ r⁻¹ = ∘ ∘ (φ(y) ⊗ f₁) ∘ ℓ⁻¹
                let lhs = b_cat
                    .comp(f.obj_map[x], g.obj_map[x], g.obj_map[y])
                    .compose(&tensor_mor(g.on_hom(x, y), &self.components[x]).unwrap())
                    .compose(&unitor_right_inv(h).unwrap());
                let rhs = b_cat
                    .comp(f.obj_map[x], f.obj_map[y], g.obj_map[y])
                    .compose(&tensor_mor(&self.components[y], f.on_hom(x, y)).unwrap())
                    .compose(&unitor_left_inv(h).unwrap());
                if lhs != rhs {
                    return LawReport::fail(
                        checks,
                        "naturality",
                        format!(
                            "pair ({},{})",
                            a_cat.objects[x], a_cat.objects[y]
                        ),
                        lhs.to_string(),
                        rhs.to_string(),
                    );
                }
            }
        }
        LawReport::pass(checks)
    }

    /// Vertical composition `ψ ∘ φ` through `1 ≅ 1⊗1`.
    pub fn vcompose(psi: &VNatTrans, phi: &VNatTrans) -> Result<VNatTrans> {
        if psi.dom != phi.cod {
            return Err(Error::ShapeMismatch(
                "vertical composition: middle functors differ".into(),
            ));
        }
        let b_cat = phi.dom.cod.clone();
        VNatTrans::new(phi.dom.clone(), psi.cod.clone(), |a| {
            b_cat.compose_elems(
                phi.dom.obj_map[a],
                phi.cod.obj_map[a],
                psi.cod.obj_map[a],
                psi.component(a),
                phi.component(a),
            )
        })
    }

    /// Whisker a functor after the transformation: `H ∘ φ`.
    pub fn whisker_post(h: &VFunctor, phi: &VNatTrans) -> Result<VNatTrans> {
        if h.dom != phi.dom.cod {
            return Err(Error::ShapeMismatch("whisker_post".into()));
        }
        VNatTrans::new(
            h.compose(&phi.dom)?,
            h.compose(&phi.cod)?,
            |a| {
                h.apply_elem(
                    phi.dom.obj_map[a],
                    phi.cod.obj_map[a],
                    phi.component(a),
                )
            },
        )
    }

    /// Whisker a functor before the transformation: `φ ∘ K`.
    pub fn whisker_pre(phi: &VNatTrans, k: &VFunctor) -> Result<VNatTrans> {
        if k.cod != phi.dom.dom {
            return Err(Error::ShapeMismatch("whisker_pre".into()));
        }
        VNatTrans::new(
            phi.dom.compose(k)?,
            phi.cod.compose(k)?,
            |a| phi.component(k.obj_map[a]).clone(),
        )
    }

    /// Horizontal composition `β * α` for `α : f ⇒ g : A → B`,
    /// `β : h ⇒ k : B → C`.
    pub fn hcompose(beta: &VNatTrans, alpha: &VNatTrans) -> Result<VNatTrans> {
        let left = VNatTrans::whisker_pre(beta, &alpha.cod)?;
        let right = VNatTrans::whisker_post(&beta.dom, alpha)?;
        VNatTrans::vcompose(&left, &right)
    }
}

/// Tensor of natural transformations, `(α⊗β)(a,b) = α(a)⊗β(b)` up to the
/// unit isomorphism.
pub fn tensor_nats(alpha: &VNatTrans, beta: &VNatTrans) -> Result<VNatTrans> {
    let dom = tensor_vfunctors(&alpha.dom, &beta.dom)?;
    let cod = tensor_vfunctors(&alpha.cod, &beta.cod)?;
    let nb = beta.dom.dom.n_objects();
    let kind = dom.dom.kind;
    VNatTrans::new(dom, cod, |o| {
        tensor_mor(alpha.component(o / nb), beta.component(o % nb))
            .unwrap()
            .compose(&unit_split(kind))
    })
}

/// The underlying ordinary category of a `V`-category: morphisms `x → y`
/// are the elements `Mor(1, hom(x,y))`, named `x>y#k` by enumeration
/// position.
pub struct UnderlyingCategory {
    pub cat: IndexCat,
    /// elements[x][y] lists the elements of hom(x,y) in enumeration order.
    pub elements: Vec<Vec<Vec<BaseMorphism>>>,
}

pub fn underlying_category(v: &VCat, cap: usize) -> Result<UnderlyingCategory> {
    let n = v.n_objects();
    let mut elements = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            elements[x][y] = base::underlying_set(v.hom(x, y), cap)?;
        }
    }
    let mut morphisms = Vec::new();
    let mut names = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            for k in 0..elements[x][y].len() {
                let name = format!("{}>{}#{}", v.objects[x], v.objects[y], k);
                names[x][y].push(name.clone());
                morphisms.push((name, v.objects[x].clone(), v.objects[y].clone()));
            }
        }
    }
    let mut comp = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (uk, u) in elements[x][y].iter().enumerate() {
                    for (vk, w) in elements[y][z].iter().enumerate() {
                        let composite = v.compose_elems(x, y, z, w, u);
                        let pos = elements[x][z]
                            .iter()
                            .position(|e| e == &composite)
                            .expect("composite must be an enumerated element");
                        comp.push((
                            (names[y][z][vk].clone(), names[x][y][uk].clone()),
                            names[x][z][pos].clone(),
                        ));
                    }
                }
            }
        }
    }
    let mut ids = Vec::new();
    for x in 0..n {
        let pos = elements[x][x]
            .iter()
            .position(|e| e == v.id(x))
            .expect("identity element must be enumerated");
        ids.push((v.objects[x].clone(), names[x][x][pos].clone()));
    }
    Ok(UnderlyingCategory {
        cat: IndexCat::new(v.objects.clone(), morphisms, comp, ids)?,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unit_vcat_validates() {
        for kind in [BaseKind::FinSet, BaseKind::FinVect { prime: 2 }] {
            let report = unit_vcat(kind).validate();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn free_vcat_on_arrow_validates() {
        let arrow = fixtures::arrow_category();
        for kind in [BaseKind::FinSet, BaseKind::FinVect { prime: 3 }] {
            let free = free_vcat(kind, &arrow);
            // hom dims (i,i)=1, (i,j)=1, (j,i)=0, (j,j)=1
            assert_eq!(free.hom(0, 0).size(), 1);
            assert_eq!(free.hom(0, 1).size(), 1);
            assert_eq!(free.hom(1, 0).size(), 0);
            assert_eq!(free.hom(1, 1).size(), 1);
            let report = free.validate();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn free_vcat_on_z2_is_group_algebra() {
        let z2 = fixtures::cyclic_group_cat(2);
        let free = free_vcat(BaseKind::FinVect { prime: 2 }, &z2);
        assert_eq!(free.n_objects(), 1);
        assert_eq!(free.hom(0, 0).size(), 2);
        // multiplication table of F_2[Z/2]: basis (e,g), (v,u) ↦ vu
        let comp = free.comp(0, 0, 0).matrix().unwrap().clone();
        // columns in order (e,e),(e,g),(g,e),(g,g) map to e,g,g,e
        assert_eq!(comp.col(0), vec![1, 0]);
        assert_eq!(comp.col(1), vec![0, 1]);
        assert_eq!(comp.col(2), vec![0, 1]);
        assert_eq!(comp.col(3), vec![1, 0]);
        assert!(free.validate().passed());
    }

    #[test]
    fn broken_comp_table_fails_unit_law() {
        let z2 = fixtures::cyclic_group_cat(2);
        let mut bad = free_vcat(BaseKind::FinVect { prime: 2 }, &z2);
        // zero out the composition: the unit law must now fail
        bad.comp[0] = BaseMorphism::zero(&bad.comp[0].dom.clone(), &bad.comp[0].cod.clone());
        let report = bad.validate();
        assert!(!report.passed());
        assert!(report.failure.unwrap().law.contains("unit"));
    }

    #[test]
    fn underlying_category_of_unit_vcat_f2() {
        let v = unit_vcat(BaseKind::FinVect { prime: 2 });
        let u = underlying_category(&v, 4096).unwrap();
        assert_eq!(u.cat.n_objects(), 1);
        assert_eq!(u.cat.n_morphisms(), 2); // 0 and 1
    }

    #[test]
    fn underlying_category_finset_is_same_category() {
        let z3 = fixtures::cyclic_group_cat(3);
        let free = free_vcat(BaseKind::FinSet, &z3);
        let u = underlying_category(&free, 4096).unwrap();
        assert_eq!(u.cat.n_morphisms(), 3);
        // same multiplication table up to the renaming of elements
        for v in 0..3 {
            for w in 0..3 {
                let names = |k: usize| u.cat.morphisms[k].name.clone();
                let _ = (names(v), names(w));
            }
        }
        assert_eq!(u.cat.objects, z3.objects);
    }

    #[test]
    fn underlying_free_vcat_contains_index() {
        // basis-element morphisms of the free category compose like I
        let arrow = fixtures::arrow_category();
        let free = free_vcat(BaseKind::FinVect { prime: 2 }, &arrow);
        let u = underlying_category(&free, 4096).unwrap();
        // hom(i,j) over F_2 has 2 elements: 0 and the basis vector u
        assert_eq!(u.elements[0][1].len(), 2);
    }

    #[test]
    fn pushforward_functorial() {
        let z3 = fixtures::cyclic_group_cat(3);
        let a = free_vcat(BaseKind::FinVect { prime: 2 }, &z3);
        let g1 = base::basis_elem(a.hom(0, 0), 1);
        let g2 = base::basis_elem(a.hom(0, 0), 2);
        let composite = a.compose_elems(0, 0, 0, &g2, &g1);
        let lhs = a.pushforward(&composite, 0, 0, 0).unwrap();
        let rhs = a
            .pushforward(&g2, 0, 0, 0)
            .unwrap()
            .compose(&a.pushforward(&g1, 0, 0, 0).unwrap());
        assert_eq!(lhs, rhs);
        // identity pushes forward to the identity
        let e = a.id(0).clone();
        assert!(a.pushforward(&e, 0, 0, 0).unwrap().is_identity());
        assert!(a.pullback_elem(&e, 0, 0, 0).unwrap().is_identity());
        // pullback is contravariantly functorial
        let lhs = a.pullback_elem(&composite, 0, 0, 0).unwrap();
        let rhs = a
            .pullback_elem(&g1, 0, 0, 0)
            .unwrap()
            .compose(&a.pullback_elem(&g2, 0, 0, 0).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_pullback_commute() {
        let z3 = fixtures::cyclic_group_cat(3);
        let a = free_vcat(BaseKind::FinSet, &z3);
        let f = base::basis_elem(a.hom(0, 0), 1);
        let g = base::basis_elem(a.hom(0, 0), 2);
        let lhs = a
            .pushforward(&g, 0, 0, 0)
            .unwrap()
            .compose(&a.pullback_elem(&f, 0, 0, 0).unwrap());
        let rhs = a
            .pullback_elem(&f, 0, 0, 0)
            .unwrap()
            .compose(&a.pushforward(&g, 0, 0, 0).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bad_element_rejected() {
        let z2 = fixtures::cyclic_group_cat(2);
        let a = free_vcat(BaseKind::FinVect { prime: 2 }, &z2);
        let wrong = base::basis_elem(&BaseObject::finvect_dim(2, 3), 0);
        assert!(matches!(
            a.pushforward(&wrong, 0, 0, 0),
            Err(Error::BadElement(_))
        ));
    }

    #[test]
    fn tensor_with_unit_is_isomorphic() {
        let z2 = fixtures::cyclic_group_cat(2);
        let a = free_vcat(BaseKind::FinVect { prime: 2 }, &z2);
        let t = tensor_vcats(&a, &unit_vcat(a.kind)).unwrap();
        assert!(t.validate().passed());
        assert_eq!(t.n_objects(), a.n_objects());
        assert_eq!(t.hom(0, 0).size(), a.hom(0, 0).size());
    }

    #[test]
    fn tensor_vcats_validates() {
        let z2 = fixtures::cyclic_group_cat(2);
        let arrow = fixtures::arrow_category();
        let a = free_vcat(BaseKind::FinVect { prime: 2 }, &z2);
        let b = free_vcat(BaseKind::FinVect { prime: 2 }, &arrow);
        let t = tensor_vcats(&a, &b).unwrap();
        assert!(t.validate().passed());
        assert_eq!(t.hom(0, 1).size(), a.hom(0, 0).size() * b.hom(0, 1).size());
    }

    #[test]
    fn opposite_vcat_validates() {
        let z3 = fixtures::cyclic_group_cat(3);
        let a = free_vcat(BaseKind::FinVect { prime: 3 }, &z3);
        let op = opposite_vcat(&a);
        assert!(op.validate().passed());
        assert_eq!(opposite_vcat(&op), a);
    }

    #[test]
    fn nat_trans_identity_unit_and_interchange() {
        let z2 = fixtures::cyclic_group_cat(2);
        let a = free_vcat(BaseKind::FinSet, &z2);
        let f = VFunctor::identity(&a);
        let id_nat = VNatTrans::identity(&f);
        assert!(id_nat.validate().passed());
        // conjugation by g is a natural automorphism of the identity on a
        // commutative group: component g at the object
        let g = base::basis_elem(a.hom(0, 0), 1);
        let phi = VNatTrans::new(f.clone(), f.clone(), |_| g.clone()).unwrap();
        assert!(phi.validate().passed());
        let psi = VNatTrans::vcompose(&phi, &phi).unwrap();
        assert_eq!(psi.component(0), id_nat.component(0));
        // unit law for vertical composition
        let left = VNatTrans::vcompose(&id_nat, &phi).unwrap();
        assert_eq!(left, phi);
        let right = VNatTrans::vcompose(&phi, &id_nat).unwrap();
        assert_eq!(right, phi);
        // interchange on a 2×2 grid: (ψ'∘φ')*(ψ∘φ) = (ψ'*ψ)∘(φ'*φ)
        let grid_lhs = VNatTrans::hcompose(
            &VNatTrans::vcompose(&phi, &phi).unwrap(),
            &VNatTrans::vcompose(&phi, &phi).unwrap(),
        )
        .unwrap();
        let grid_rhs = VNatTrans::vcompose(
            &VNatTrans::hcompose(&phi, &phi).unwrap(),
            &VNatTrans::hcompose(&phi, &phi).unwrap(),
        )
        .unwrap();
        assert_eq!(grid_lhs, grid_rhs);
        // whiskering the identity functor changes nothing
        let w = VNatTrans::whisker_post(&f, &phi).unwrap();
        assert_eq!(w.component(0), phi.component(0));
    }
}
