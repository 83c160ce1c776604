//! Diagrams of enriched categories: oplax and lax functors from a finite
//! index category into `V`-categories, left/right transformations between
//! them, and morphisms of transformations.
//!
//! An oplax functor `X : I → V-Cat` carries comparison cells
//! `η_i : X(1_i) ⇒ 1` and `θ_{v,u} : X(v∘u) ⇒ X(v)∘X(u)` subject to two
//! unit squares per morphism and a cocycle per composable triple. A lax
//! functor reverses both cells. Comparison data is stored for *every*
//! morphism and composable pair — strict diagrams store identities — so a
//! single code path handles all diagrams; strictness is a derived
//! predicate.
//!
//! Enumeration order for pairs and triples is lexicographic in the index
//! category's morphism list, and failure reports cite those indices.

use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::vcat::{IndexCat, VCat, VFunctor, VNatTrans};

fn check_unit_cell(
    cell: &VNatTrans,
    dom: &VFunctor,
    cod: &VFunctor,
    what: &str,
) -> Result<()> {
    if &cell.dom != dom || &cell.cod != cod {
        return Err(Error::ShapeMismatch(format!("{what} has the wrong shape")));
    }
    Ok(())
}

/// An oplax functor from a finite index category into `V`-categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OplaxDiagram {
    pub index: IndexCat,
    pub on_obj: Vec<VCat>,
    /// `on_mor[u] : X(dom u) → X(cod u)`
    pub on_mor: Vec<VFunctor>,
    /// `unit[i] : X(1_i) ⇒ 1_{X(i)}`
    pub unit: Vec<VNatTrans>,
    /// dense composable table: `comp[v*n+u] : X(v∘u) ⇒ X(v)∘X(u)`
    pub comp: Vec<Option<VNatTrans>>,
}

impl OplaxDiagram {
    pub fn new(
        index: IndexCat,
        on_obj: Vec<VCat>,
        on_mor: Vec<VFunctor>,
        unit: Vec<VNatTrans>,
        comp: Vec<Option<VNatTrans>>,
    ) -> Result<OplaxDiagram> {
        let d = OplaxDiagram {
            index,
            on_obj,
            on_mor,
            unit,
            comp,
        };
        d.check_shapes()?;
        Ok(d)
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.index.n_morphisms();
        if self.on_obj.len() != self.index.n_objects()
            || self.on_mor.len() != n
            || self.unit.len() != self.index.n_objects()
            || self.comp.len() != n * n
        {
            return Err(Error::IncompleteData("diagram tables must be total".into()));
        }
        for (u, f) in self.on_mor.iter().enumerate() {
            let m = &self.index.morphisms[u];
            if f.dom != self.on_obj[m.dom] || f.cod != self.on_obj[m.cod] {
                return Err(Error::ShapeMismatch(format!(
                    "functor at `{}` has the wrong endpoints",
                    m.name
                )));
            }
        }
        for (i, eta) in self.unit.iter().enumerate() {
            let idm = self.index.identity(i);
            check_unit_cell(
                eta,
                &self.on_mor[idm],
                &VFunctor::identity(&self.on_obj[i]),
                &format!("unit cell at object {i}"),
            )?;
        }
        for v in 0..n {
            for u in 0..n {
                match (&self.comp[v * n + u], self.index.composable(v, u)) {
                    (Some(theta), true) => {
                        let w = self.index.compose(v, u);
                        let composite = self.on_mor[v].compose(&self.on_mor[u])?;
                        check_unit_cell(
                            theta,
                            &self.on_mor[w],
                            &composite,
                            &format!("composition cell at pair ({v},{u})"),
                        )?;
                    }
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(Error::ShapeMismatch(format!(
                            "composition cell declared for non-composable pair ({v},{u})"
                        )))
                    }
                    (None, true) => {
                        return Err(Error::IncompleteData(format!(
                            "missing composition cell at pair ({v},{u})"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn theta(&self, v: usize, u: usize) -> &VNatTrans {
        self.comp[v * self.index.n_morphisms() + u]
            .as_ref()
            .expect("composable pair")
    }

    /// A diagram is strict when every comparison cell is an identity.
    pub fn is_strict(&self) -> bool {
        self.unit
            .iter()
            .all(|eta| eta.dom == eta.cod && *eta == VNatTrans::identity(&eta.dom))
            && self.comp.iter().flatten().all(|theta| {
                theta.dom == theta.cod && *theta == VNatTrans::identity(&theta.dom)
            })
    }

    /// Check the oplax coherence laws.
    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for (i, cat) in self.on_obj.iter().enumerate() {
            let r = cat.validate();
            checks += r.checks;
            if !r.passed() {
                return LawReport {
                    checks,
                    failure: r.failure.map(|mut f| {
                        f.location = format!("X({}) : {}", self.index.objects[i], f.location);
                        f
                    }),
                };
            }
        }
        for (u, f) in self.on_mor.iter().enumerate() {
            let r = f.validate();
            checks += r.checks;
            if !r.passed() {
                return LawReport {
                    checks,
                    failure: r.failure.map(|mut f| {
                        f.location = format!(
                            "X({}) : {}",
                            self.index.morphisms[u].name, f.location
                        );
                        f
                    }),
                };
            }
        }
        for eta in &self.unit {
            let r = eta.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for theta in self.comp.iter().flatten() {
            let r = theta.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        let n = self.index.n_morphisms();
        // unit squares per morphism
        for u in 0..n {
            checks += 2;
            let m = &self.index.morphisms[u];
            let (i, j) = (m.dom, m.cod);
            let fu = &self.on_mor[u];
            let id_fu = VNatTrans::identity(fu);
            let right_unit = VNatTrans::vcompose(
                &VNatTrans::whisker_post(fu, &self.unit[i]).unwrap(),
                self.theta(u, self.index.identity(i)),
            )
            .unwrap();
            if right_unit != id_fu {
                return LawReport::fail(
                    checks,
                    "oplax right unit square",
                    format!("morphism {} (index {u})", m.name),
                    "(F(u)∘η_i) · θ_{u,1}",
                    "1_{F(u)}",
                );
            }
            let left_unit = VNatTrans::vcompose(
                &VNatTrans::whisker_pre(&self.unit[j], fu).unwrap(),
                self.theta(self.index.identity(j), u),
            )
            .unwrap();
            if left_unit != id_fu {
                return LawReport::fail(
                    checks,
                    "oplax left unit square",
                    format!("morphism {} (index {u})", m.name),
                    "(η_j∘F(u)) · θ_{1,u}",
                    "1_{F(u)}",
                );
            }
        }
        // cocycle per composable triple, lexicographic in (w, v, u)
        for w in 0..n {
            for v in 0..n {
                for u in 0..n {
                    if !(self.index.composable(v, u) && self.index.composable(w, v)) {
                        continue;
                    }
                    checks += 1;
                    let vu = self.index.compose(v, u);
                    let wv = self.index.compose(w, v);
                    let route1 = VNatTrans::vcompose(
                        &VNatTrans::whisker_pre(self.theta(w, v), &self.on_mor[u]).unwrap(),
                        self.theta(wv, u),
                    )
                    .unwrap();
                    let route2 = VNatTrans::vcompose(
                        &VNatTrans::whisker_post(&self.on_mor[w], self.theta(v, u)).unwrap(),
                        self.theta(w, vu),
                    )
                    .unwrap();
                    let agree = (0..route1.dom.dom.n_objects())
                        .all(|x| route1.component(x) == route2.component(x));
                    if !agree {
                        return LawReport::fail(
                            checks,
                            "oplax cocycle",
                            format!("triple indices ({w},{v},{u})"),
                            "(θ_{w,v}∘F(u)) · θ_{wv,u}",
                            "(F(w)∘θ_{v,u}) · θ_{w,vu}",
                        );
                    }
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// A lax functor: same quiver data as an oplax one, comparison cells
/// reversed: `η_i : 1 ⇒ X(1_i)` and `θ_{v,u} : X(v)∘X(u) ⇒ X(v∘u)`.
/// Diagrams feeding the lax Grothendieck construction are lax on `I^op`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxDiagram {
    pub index: IndexCat,
    pub on_obj: Vec<VCat>,
    pub on_mor: Vec<VFunctor>,
    /// `unit[i] : 1_{X(i)} ⇒ X(1_i)`
    pub unit: Vec<VNatTrans>,
    /// `comp[v*n+u] : X(v)∘X(u) ⇒ X(v∘u)`
    pub comp: Vec<Option<VNatTrans>>,
}

impl LaxDiagram {
    pub fn new(
        index: IndexCat,
        on_obj: Vec<VCat>,
        on_mor: Vec<VFunctor>,
        unit: Vec<VNatTrans>,
        comp: Vec<Option<VNatTrans>>,
    ) -> Result<LaxDiagram> {
        let d = LaxDiagram {
            index,
            on_obj,
            on_mor,
            unit,
            comp,
        };
        d.check_shapes()?;
        Ok(d)
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.index.n_morphisms();
        if self.on_obj.len() != self.index.n_objects()
            || self.on_mor.len() != n
            || self.unit.len() != self.index.n_objects()
            || self.comp.len() != n * n
        {
            return Err(Error::IncompleteData("diagram tables must be total".into()));
        }
        for (u, f) in self.on_mor.iter().enumerate() {
            let m = &self.index.morphisms[u];
            if f.dom != self.on_obj[m.dom] || f.cod != self.on_obj[m.cod] {
                return Err(Error::ShapeMismatch(format!(
                    "functor at `{}` has the wrong endpoints",
                    m.name
                )));
            }
        }
        for (i, eta) in self.unit.iter().enumerate() {
            let idm = self.index.identity(i);
            check_unit_cell(
                eta,
                &VFunctor::identity(&self.on_obj[i]),
                &self.on_mor[idm],
                &format!("unit cell at object {i}"),
            )?;
        }
        for v in 0..n {
            for u in 0..n {
                match (&self.comp[v * n + u], self.index.composable(v, u)) {
                    (Some(theta), true) => {
                        let w = self.index.compose(v, u);
                        let composite = self.on_mor[v].compose(&self.on_mor[u])?;
                        check_unit_cell(
                            theta,
                            &composite,
                            &self.on_mor[w],
                            &format!("composition cell at pair ({v},{u})"),
                        )?;
                    }
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(Error::ShapeMismatch(format!(
                            "composition cell declared for non-composable pair ({v},{u})"
                        )))
                    }
                    (None, true) => {
                        return Err(Error::IncompleteData(format!(
                            "missing composition cell at pair ({v},{u})"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn theta(&self, v: usize, u: usize) -> &VNatTrans {
        self.comp[v * self.index.n_morphisms() + u]
            .as_ref()
            .expect("composable pair")
    }

    pub fn is_strict(&self) -> bool {
        self.unit
            .iter()
            .all(|eta| eta.dom == eta.cod && *eta == VNatTrans::identity(&eta.dom))
            && self.comp.iter().flatten().all(|theta| {
                theta.dom == theta.cod && *theta == VNatTrans::identity(&theta.dom)
            })
    }

    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for cat in &self.on_obj {
            let r = cat.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for f in &self.on_mor {
            let r = f.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for eta in &self.unit {
            let r = eta.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for theta in self.comp.iter().flatten() {
            let r = theta.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        let n = self.index.n_morphisms();
        for u in 0..n {
            checks += 2;
            let m = &self.index.morphisms[u];
            let (i, j) = (m.dom, m.cod);
            let fu = &self.on_mor[u];
            let id_fu = VNatTrans::identity(fu);
            let right_unit = VNatTrans::vcompose(
                self.theta(u, self.index.identity(i)),
                &VNatTrans::whisker_post(fu, &self.unit[i]).unwrap(),
            )
            .unwrap();
            if right_unit != id_fu {
                return LawReport::fail(
                    checks,
                    "lax right unit square",
                    format!("morphism {} (index {u})", m.name),
                    "θ_{u,1} · (F(u)∘η_i)",
                    "1_{F(u)}",
                );
            }
            let left_unit = VNatTrans::vcompose(
                self.theta(self.index.identity(j), u),
                &VNatTrans::whisker_pre(&self.unit[j], fu).unwrap(),
            )
            .unwrap();
            if left_unit != id_fu {
                return LawReport::fail(
                    checks,
                    "lax left unit square",
                    format!("morphism {} (index {u})", m.name),
                    "θ_{1,u} · (η_j∘F(u))",
                    "1_{F(u)}",
                );
            }
        }
        for w in 0..n {
            for v in 0..n {
                for u in 0..n {
                    if !(self.index.composable(v, u) && self.index.composable(w, v)) {
                        continue;
                    }
                    checks += 1;
                    let vu = self.index.compose(v, u);
                    let wv = self.index.compose(w, v);
                    let route1 = VNatTrans::vcompose(
                        self.theta(wv, u),
                        &VNatTrans::whisker_pre(self.theta(w, v), &self.on_mor[u]).unwrap(),
                    )
                    .unwrap();
                    let route2 = VNatTrans::vcompose(
                        self.theta(w, vu),
                        &VNatTrans::whisker_post(&self.on_mor[w], self.theta(v, u)).unwrap(),
                    )
                    .unwrap();
                    let agree = (0..route1.dom.dom.n_objects())
                        .all(|x| route1.component(x) == route2.component(x));
                    if !agree {
                        return LawReport::fail(
                            checks,
                            "lax cocycle",
                            format!("triple indices ({w},{v},{u})"),
                            "θ_{wv,u} · (θ_{w,v}∘F(u))",
                            "θ_{w,vu} · (F(w)∘θ_{v,u})",
                        );
                    }
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// A left transformation of oplax functors: components `F(i)` with squares
/// `φ(u) : Y(u)∘F(i) ⇒ F(j)∘X(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftTransf {
    pub dom: OplaxDiagram,
    pub cod: OplaxDiagram,
    pub components: Vec<VFunctor>,
    pub squares: Vec<VNatTrans>,
}

impl LeftTransf {
    pub fn new(
        dom: OplaxDiagram,
        cod: OplaxDiagram,
        components: Vec<VFunctor>,
        squares: Vec<VNatTrans>,
    ) -> Result<LeftTransf> {
        if dom.index != cod.index {
            return Err(Error::TagMismatch(
                "transformation across different index categories".into(),
            ));
        }
        if components.len() != dom.index.n_objects() || squares.len() != dom.index.n_morphisms() {
            return Err(Error::IncompleteData("transformation tables must be total".into()));
        }
        for (i, f) in components.iter().enumerate() {
            if f.dom != dom.on_obj[i] || f.cod != cod.on_obj[i] {
                return Err(Error::ShapeMismatch(format!("component at object {i}")));
            }
        }
        for (u, phi) in squares.iter().enumerate() {
            let m = &dom.index.morphisms[u];
            let left = cod.on_mor[u].compose(&components[m.dom])?;
            let right = components[m.cod].compose(&dom.on_mor[u])?;
            check_unit_cell(phi, &left, &right, &format!("square at morphism {u}"))?;
        }
        Ok(LeftTransf {
            dom,
            cod,
            components,
            squares,
        })
    }

    pub fn identity(x: &OplaxDiagram) -> LeftTransf {
        let components: Vec<VFunctor> = x.on_obj.iter().map(VFunctor::identity).collect();
        let squares = x
            .on_mor
            .iter()
            .map(|f| VNatTrans::identity(f))
            .collect();
        LeftTransf::new(x.clone(), x.clone(), components, squares).unwrap()
    }

    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for f in &self.components {
            let r = f.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for phi in &self.squares {
            let r = phi.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        // unit compatibility per object
        for i in 0..self.dom.index.n_objects() {
            checks += 1;
            let fi = &self.components[i];
            let lhs = VNatTrans::vcompose(
                &VNatTrans::whisker_post(fi, &self.dom.unit[i]).unwrap(),
                &self.squares[self.dom.index.identity(i)],
            )
            .unwrap();
            let rhs = VNatTrans::whisker_pre(&self.cod.unit[i], fi).unwrap();
            if lhs != rhs {
                return LawReport::fail(
                    checks,
                    "transformation unit square",
                    format!("object {}", self.dom.index.objects[i]),
                    "(F(i)∘η_X) · φ(1_i)",
                    "η_Y∘F(i)",
                );
            }
        }
        // composition compatibility per composable pair
        let n = self.dom.index.n_morphisms();
        for v in 0..n {
            for u in 0..n {
                if !self.dom.index.composable(v, u) {
                    continue;
                }
                checks += 1;
                let m_u = &self.dom.index.morphisms[u];
                let vu = self.dom.index.compose(v, u);
                let lhs = VNatTrans::vcompose(
                    &VNatTrans::whisker_pre(&self.squares[v], &self.dom.on_mor[u]).unwrap(),
                    &VNatTrans::vcompose(
                        &VNatTrans::whisker_post(&self.cod.on_mor[v], &self.squares[u]).unwrap(),
                        &VNatTrans::whisker_pre(self.cod.theta(v, u), &self.components[m_u.dom])
                            .unwrap(),
                    )
                    .unwrap(),
                )
                .unwrap();
                let rhs = VNatTrans::vcompose(
                    &VNatTrans::whisker_post(
                        &self.components[self.dom.index.morphisms[v].cod],
                        self.dom.theta(v, u),
                    )
                    .unwrap(),
                    &self.squares[vu],
                )
                .unwrap();
                let agree = (0..lhs.dom.dom.n_objects())
                    .all(|x| lhs.component(x) == rhs.component(x));
                if !agree {
                    return LawReport::fail(
                        checks,
                        "transformation composition square",
                        format!("pair indices ({v},{u})"),
                        "(φ(v)∘X(u)) · (Y(v)∘φ(u)) · (θ_Y∘F(i))",
                        "(F(k)∘θ_X) · φ(vu)",
                    );
                }
            }
        }
        LawReport::pass(checks)
    }

    /// Composition `(G,ψ) ∘ (F,φ)`: components compose, squares paste.
    pub fn compose(&self, other: &LeftTransf) -> Result<LeftTransf> {
        if other.cod != self.dom {
            return Err(Error::ShapeMismatch("left transformations not composable".into()));
        }
        let components: Vec<VFunctor> = (0..other.dom.index.n_objects())
            .map(|i| self.components[i].compose(&other.components[i]))
            .collect::<Result<_>>()?;
        let squares: Vec<VNatTrans> = (0..other.dom.index.n_morphisms())
            .map(|u| {
                let m = &other.dom.index.morphisms[u];
                VNatTrans::vcompose(
                    &VNatTrans::whisker_post(&self.components[m.cod], &other.squares[u])?,
                    &VNatTrans::whisker_pre(&self.squares[u], &other.components[m.dom])?,
                )
            })
            .collect::<Result<_>>()?;
        LeftTransf::new(other.dom.clone(), self.cod.clone(), components, squares)
    }
}

/// A right transformation of oplax functors: squares point the other way,
/// `φ(u) : F(j)∘X(u) ⇒ Y(u)∘F(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightTransf {
    pub dom: OplaxDiagram,
    pub cod: OplaxDiagram,
    pub components: Vec<VFunctor>,
    pub squares: Vec<VNatTrans>,
}

impl RightTransf {
    pub fn new(
        dom: OplaxDiagram,
        cod: OplaxDiagram,
        components: Vec<VFunctor>,
        squares: Vec<VNatTrans>,
    ) -> Result<RightTransf> {
        if dom.index != cod.index {
            return Err(Error::TagMismatch(
                "transformation across different index categories".into(),
            ));
        }
        if components.len() != dom.index.n_objects() || squares.len() != dom.index.n_morphisms() {
            return Err(Error::IncompleteData("transformation tables must be total".into()));
        }
        for (u, phi) in squares.iter().enumerate() {
            let m = &dom.index.morphisms[u];
            let left = components[m.cod].compose(&dom.on_mor[u])?;
            let right = cod.on_mor[u].compose(&components[m.dom])?;
            check_unit_cell(phi, &left, &right, &format!("square at morphism {u}"))?;
        }
        Ok(RightTransf {
            dom,
            cod,
            components,
            squares,
        })
    }

    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for f in &self.components {
            let r = f.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for phi in &self.squares {
            let r = phi.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for i in 0..self.dom.index.n_objects() {
            checks += 1;
            let fi = &self.components[i];
            // φ(1_i) · (F(i)∘η_X) ... unit square for right transformations:
            // (η_Y∘F(i)) = φ(1_i) after (F(i)∘η_X) reversed accordingly:
            // F(i)∘X(1_i) --F η--> F(i) and F(i)∘X(1_i) --φ(1_i)--> Y(1_i)∘F(i) --η_Y F--> F(i)
            let lhs = VNatTrans::vcompose(
                &VNatTrans::whisker_pre(&self.cod.unit[i], fi).unwrap(),
                &self.squares[self.dom.index.identity(i)],
            )
            .unwrap();
            let rhs = VNatTrans::whisker_post(fi, &self.dom.unit[i]).unwrap();
            if lhs != rhs {
                return LawReport::fail(
                    checks,
                    "right transformation unit square",
                    format!("object {}", self.dom.index.objects[i]),
                    "(η_Y∘F(i)) · φ(1_i)",
                    "F(i)∘η_X",
                );
            }
        }
        let n = self.dom.index.n_morphisms();
        for v in 0..n {
            for u in 0..n {
                if !self.dom.index.composable(v, u) {
                    continue;
                }
                checks += 1;
                let m_u = &self.dom.index.morphisms[u];
                let m_v = &self.dom.index.morphisms[v];
                let vu = self.dom.index.compose(v, u);
                // F(k)X(vu) --F θ_X--> F(k)X(v)X(u) --φ(v)X(u)--> Y(v)F(j)X(u)
                //   --Y(v)φ(u)--> Y(v)Y(u)F(i)
                let lhs = VNatTrans::vcompose(
                    &VNatTrans::whisker_post(&self.cod.on_mor[v], &self.squares[u]).unwrap(),
                    &VNatTrans::vcompose(
                        &VNatTrans::whisker_pre(&self.squares[v], &self.dom.on_mor[u]).unwrap(),
                        &VNatTrans::whisker_post(&self.components[m_v.cod], self.dom.theta(v, u))
                            .unwrap(),
                    )
                    .unwrap(),
                )
                .unwrap();
                // F(k)X(vu) --φ(vu)--> Y(vu)F(i) --θ_Y F(i)--> Y(v)Y(u)F(i)
                let rhs = VNatTrans::vcompose(
                    &VNatTrans::whisker_pre(self.cod.theta(v, u), &self.components[m_u.dom])
                        .unwrap(),
                    &self.squares[vu],
                )
                .unwrap();
                let agree = (0..lhs.dom.dom.n_objects())
                    .all(|x| lhs.component(x) == rhs.component(x));
                if !agree {
                    return LawReport::fail(
                        checks,
                        "right transformation composition square",
                        format!("pair indices ({v},{u})"),
                        "(Y(v)∘φ(u)) · (φ(v)∘X(u)) · (F(k)∘θ_X)",
                        "(θ_Y∘F(i)) · φ(vu)",
                    );
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// A right transformation of lax functors (the variant the fiber
/// 2-functor produces): `φ(u) : F(j)∘X(u) ⇒ Y(u)∘F(i)` with lax-side
/// coherence. Left transformations of lax functors are the same data with
/// every square reversed; they have no dedicated constructor here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxRightTransf {
    pub dom: LaxDiagram,
    pub cod: LaxDiagram,
    pub components: Vec<VFunctor>,
    pub squares: Vec<VNatTrans>,
}

impl LaxRightTransf {
    pub fn new(
        dom: LaxDiagram,
        cod: LaxDiagram,
        components: Vec<VFunctor>,
        squares: Vec<VNatTrans>,
    ) -> Result<LaxRightTransf> {
        if dom.index != cod.index {
            return Err(Error::TagMismatch(
                "transformation across different index categories".into(),
            ));
        }
        for (u, phi) in squares.iter().enumerate() {
            let m = &dom.index.morphisms[u];
            let left = components[m.cod].compose(&dom.on_mor[u])?;
            let right = cod.on_mor[u].compose(&components[m.dom])?;
            check_unit_cell(phi, &left, &right, &format!("square at morphism {u}"))?;
        }
        Ok(LaxRightTransf {
            dom,
            cod,
            components,
            squares,
        })
    }

    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for f in &self.components {
            let r = f.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for phi in &self.squares {
            let r = phi.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        for i in 0..self.dom.index.n_objects() {
            checks += 1;
            let fi = &self.components[i];
            // F(i) --F∘η_X--> F(i)X(1_i) --φ(1_i)--> Y(1_i)F(i)
            // equals F(i) --η_Y∘F--> Y(1_i)F(i)
            let lhs = VNatTrans::vcompose(
                &self.squares[self.dom.index.identity(i)],
                &VNatTrans::whisker_post(fi, &self.dom.unit[i]).unwrap(),
            )
            .unwrap();
            let rhs = VNatTrans::whisker_pre(&self.cod.unit[i], fi).unwrap();
            if lhs != rhs {
                return LawReport::fail(
                    checks,
                    "lax right transformation unit square",
                    format!("object {}", self.dom.index.objects[i]),
                    "φ(1_i) · (F(i)∘η_X)",
                    "η_Y∘F(i)",
                );
            }
        }
        let n = self.dom.index.n_morphisms();
        for v in 0..n {
            for u in 0..n {
                if !self.dom.index.composable(v, u) {
                    continue;
                }
                checks += 1;
                let m_u = &self.dom.index.morphisms[u];
                let m_v = &self.dom.index.morphisms[v];
                let vu = self.dom.index.compose(v, u);
                // F(k)X(v)X(u) --φ(v)X(u)--> Y(v)F(j)X(u) --Y(v)φ(u)-->
                //   Y(v)Y(u)F(i) --θ_Y F--> Y(vu)F(i)
                let lhs = VNatTrans::vcompose(
                    &VNatTrans::whisker_pre(self.cod.theta(v, u), &self.components[m_u.dom])
                        .unwrap(),
                    &VNatTrans::vcompose(
                        &VNatTrans::whisker_post(&self.cod.on_mor[v], &self.squares[u]).unwrap(),
                        &VNatTrans::whisker_pre(&self.squares[v], &self.dom.on_mor[u]).unwrap(),
                    )
                    .unwrap(),
                )
                .unwrap();
                // F(k)X(v)X(u) --F θ_X--> F(k)X(vu) --φ(vu)--> Y(vu)F(i)
                let rhs = VNatTrans::vcompose(
                    &self.squares[vu],
                    &VNatTrans::whisker_post(&self.components[m_v.cod], self.dom.theta(v, u))
                        .unwrap(),
                )
                .unwrap();
                let agree = (0..lhs.dom.dom.n_objects())
                    .all(|x| lhs.component(x) == rhs.component(x));
                if !agree {
                    return LawReport::fail(
                        checks,
                        "lax right transformation composition square",
                        format!("pair indices ({v},{u})"),
                        "(θ_Y∘F) · (Y(v)∘φ(u)) · (φ(v)∘X(u))",
                        "φ(vu) · (F(k)∘θ_X)",
                    );
                }
            }
        }
        LawReport::pass(checks)
    }
}

/// A morphism of left transformations: per-object 2-cells `θ(i)`
/// commuting with the squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransfMorphism {
    pub dom: LeftTransf,
    pub cod: LeftTransf,
    pub components: Vec<VNatTrans>,
}

impl TransfMorphism {
    pub fn new(dom: LeftTransf, cod: LeftTransf, components: Vec<VNatTrans>) -> Result<TransfMorphism> {
        if dom.dom != cod.dom || dom.cod != cod.cod {
            return Err(Error::ShapeMismatch(
                "morphism of transformations between non-parallel transformations".into(),
            ));
        }
        if components.len() != dom.dom.index.n_objects() {
            return Err(Error::IncompleteData("component table must be total".into()));
        }
        for (i, theta) in components.iter().enumerate() {
            if theta.dom != dom.components[i] || theta.cod != cod.components[i] {
                return Err(Error::ShapeMismatch(format!("component at object {i}")));
            }
        }
        Ok(TransfMorphism {
            dom,
            cod,
            components,
        })
    }

    pub fn identity(t: &LeftTransf) -> TransfMorphism {
        TransfMorphism::new(
            t.clone(),
            t.clone(),
            t.components.iter().map(VNatTrans::identity).collect(),
        )
        .unwrap()
    }

    pub fn validate(&self) -> LawReport {
        let mut checks = 0;
        for theta in &self.components {
            let r = theta.validate();
            checks += r.checks;
            if !r.passed() {
                return r;
            }
        }
        let x = &self.dom.dom;
        let y = &self.dom.cod;
        for (u, m) in x.index.morphisms.iter().enumerate() {
            checks += 1;
            // ψ(u) · (Y(u)∘θ(i)) = (θ(j)∘X(u)) · φ(u)
            let lhs = VNatTrans::vcompose(
                &self.cod.squares[u],
                &VNatTrans::whisker_post(&y.on_mor[u], &self.components[m.dom]).unwrap(),
            )
            .unwrap();
            let rhs = VNatTrans::vcompose(
                &VNatTrans::whisker_pre(&self.components[m.cod], &x.on_mor[u]).unwrap(),
                &self.dom.squares[u],
            )
            .unwrap();
            if lhs != rhs {
                return LawReport::fail(
                    checks,
                    "morphism-of-transformations square",
                    format!("morphism {} (index {u})", m.name),
                    "ψ(u) · (Y(u)∘θ(i))",
                    "(θ(j)∘X(u)) · φ(u)",
                );
            }
        }
        LawReport::pass(checks)
    }

    /// Vertical composition.
    pub fn compose(&self, other: &TransfMorphism) -> Result<TransfMorphism> {
        if other.cod != self.dom {
            return Err(Error::ShapeMismatch("2-morphisms not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(b, a)| VNatTrans::vcompose(b, a))
            .collect::<Result<_>>()?;
        TransfMorphism::new(other.dom.clone(), self.cod.clone(), components)
    }
}

/// The constant diagram on a category: every functor is the identity and
/// every comparison cell an identity 2-cell.
pub fn diagonal(a: &VCat, index: &IndexCat) -> OplaxDiagram {
    let n = index.n_morphisms();
    let id_f = VFunctor::identity(a);
    let id_nat = VNatTrans::identity(&id_f);
    let mut comp = vec![None; n * n];
    for v in 0..n {
        for u in 0..n {
            if index.composable(v, u) {
                comp[v * n + u] = Some(id_nat.clone());
            }
        }
    }
    OplaxDiagram::new(
        index.clone(),
        vec![a.clone(); index.n_objects()],
        vec![id_f; n],
        vec![id_nat; index.n_objects()],
        comp,
    )
    .unwrap()
}

/// Build a strict diagram from per-morphism functors; comparison cells are
/// filled with identities and strict functoriality is required.
pub fn strict_diagram(
    index: &IndexCat,
    on_obj: Vec<VCat>,
    on_mor: Vec<VFunctor>,
) -> Result<OplaxDiagram> {
    let n = index.n_morphisms();
    let mut comp = vec![None; n * n];
    for v in 0..n {
        for u in 0..n {
            if index.composable(v, u) {
                let w = index.compose(v, u);
                let composite = on_mor[v].compose(&on_mor[u])?;
                if composite != on_mor[w] {
                    return Err(Error::ShapeMismatch(format!(
                        "strict diagram: X({}{}) ≠ X({})∘X({})",
                        index.morphisms[v].name,
                        index.morphisms[u].name,
                        index.morphisms[v].name,
                        index.morphisms[u].name
                    )));
                }
                comp[v * n + u] = Some(VNatTrans::identity(&composite));
            }
        }
    }
    let unit = (0..index.n_objects())
        .map(|i| {
            let idm = index.identity(i);
            if on_mor[idm] != VFunctor::identity(&on_obj[i]) {
                return Err(Error::ShapeMismatch(format!(
                    "strict diagram: X(1_{}) is not the identity functor",
                    index.objects[i]
                )));
            }
            Ok(VNatTrans::identity(&on_mor[idm]))
        })
        .collect::<Result<_>>()?;
    OplaxDiagram::new(index.clone(), on_obj, on_mor, unit, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{self, BaseKind};
    use crate::fixtures;
    use crate::vcat::{free_vcat, unit_vcat};

    #[test]
    fn diagonal_validates() {
        let a = fixtures::group_algebra(2, 2);
        for index in [
            fixtures::terminal_category(),
            fixtures::arrow_category(),
            fixtures::cyclic_group_cat(2),
        ] {
            let d = diagonal(&a, &index);
            assert!(d.is_strict());
            let report = d.validate();
            assert!(report.passed(), "{report}");
        }
        let u = diagonal(&unit_vcat(BaseKind::FinSet), &fixtures::terminal_category());
        assert!(u.validate().passed());
    }

    #[test]
    fn z2_action_on_z3_validates() {
        let x = fixtures::z2_on_z3();
        assert!(x.is_strict());
        let report = x.validate();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn corrupted_theta_fails_validation() {
        let mut x = fixtures::z2_on_z3();
        // replace θ_{g1,g1} by a wrong (non-commuting) cell: the component
        // picked from a non-identity group element
        let a = x.on_obj[0].clone();
        let nonid = base::basis_elem(a.hom(0, 0), 1);
        let theta = x.comp[1 * 2 + 1].as_ref().unwrap();
        let bad = VNatTrans::new(theta.dom.clone(), theta.cod.clone(), |_| nonid.clone()).unwrap();
        x.comp[1 * 2 + 1] = Some(bad);
        let report = x.validate();
        assert!(!report.passed());
    }

    #[test]
    fn twisted_diagram_is_oplax_but_not_strict() {
        let x = fixtures::twisted_terminal_diagram();
        assert!(!x.is_strict());
        let report = x.validate();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn identity_transformation_validates() {
        let x = fixtures::z2_on_z3();
        let id = LeftTransf::identity(&x);
        assert!(id.validate().passed());
        let composed = id.compose(&id).unwrap();
        assert_eq!(composed.components, id.components);
        // morphism of transformations: identity
        let tm = TransfMorphism::identity(&id);
        assert!(tm.validate().passed());
    }

    #[test]
    fn broken_square_fails() {
        // corrupting the square at the identity morphism breaks the unit
        // condition, which pins that square to the comparison cells
        let x = fixtures::z2_on_z3();
        let id = LeftTransf::identity(&x);
        let a = &x.on_obj[0];
        let nonid = base::basis_elem(a.hom(0, 0), 2);
        let mut squares = id.squares.clone();
        squares[0] = VNatTrans::new(
            squares[0].dom.clone(),
            squares[0].cod.clone(),
            |_| nonid.clone(),
        )
        .unwrap();
        let broken = LeftTransf::new(x.clone(), x.clone(), id.components.clone(), squares).unwrap();
        let report = broken.validate();
        assert!(!report.passed());
        assert!(report.failure.unwrap().law.contains("unit"));

        // breaking a non-identity square while keeping it natural must
        // break the cocycle against a third transformation: check instead
        // that a square family violating composition compatibility fails.
        // Use components that are NOT the identity: fold Z/3 to the
        // trivial category is natural, so corrupt via a non-natural cell.
        let g1 = base::basis_elem(a.hom(0, 0), 1);
        let mut squares = id.squares.clone();
        // component not natural for the inversion action: g1 against X(g1)
        // fails g1∘inv(f) = inv(f)∘g1? Z/3 is abelian so naturality holds;
        // instead break the shape-level law by mixing squares: φ(1) = g1
        // as well, which keeps naturality but breaks the unit square.
        squares[0] = VNatTrans::new(
            squares[0].dom.clone(),
            squares[0].cod.clone(),
            |_| g1.clone(),
        )
        .unwrap();
        let broken2 =
            LeftTransf::new(x.clone(), x.clone(), id.components.clone(), squares).unwrap();
        assert!(!broken2.validate().passed());
    }

    #[test]
    fn morphisms_into_diagonal_decode() {
        // a left transformation X → Δ(A) is a family of functors with
        // 2-cells φ(u) : F(i) ⇒ F(j)∘X(u) satisfying the two conditions of
        // the constant-codomain description; re-validate them directly.
        let x = fixtures::z2_on_z3();
        let a = x.on_obj[0].clone();
        let delta = diagonal(&a, &x.index);
        // F(∗) = identity, φ(g) : Id ⇒ X(g) picks the identity elements?
        // For the inversion action that is not natural; use the fold into
        // the trivial target instead: A = unit category.
        let unit = unit_vcat(BaseKind::FinSet);
        let delta_u = diagonal(&unit, &x.index);
        let bang = VFunctor::new(a.clone(), unit.clone(), vec![0], |x0, y0| {
            base::BaseMorphism::from_map(
                a.hom(x0, y0).clone(),
                unit.hom(0, 0).clone(),
                vec![0; a.hom(x0, y0).size()],
            )
        })
        .unwrap();
        let squares: Vec<VNatTrans> = x
            .on_mor
            .iter()
            .map(|xu| {
                let lhs = VFunctor::identity(&unit).compose(&bang).unwrap();
                let rhs = bang.compose(xu).unwrap();
                VNatTrans::new(lhs, rhs, |_| unit.id(0).clone()).unwrap()
            })
            .collect();
        let t = LeftTransf::new(x.clone(), delta_u, vec![bang.clone()], squares).unwrap();
        let report = t.validate();
        assert!(report.passed(), "{report}");
        // decode: with Y = Δ(A), the square φ(u) is literally the family
        // F(i) ⇒ F(j)∘X(u); the unit condition says η_i kills φ(1_i).
        let phi_1 = &t.squares[0];
        let decoded_condition = VNatTrans::vcompose(
            &VNatTrans::whisker_post(&t.components[0], &x.unit[0]).unwrap(),
            phi_1,
        )
        .unwrap();
        assert_eq!(decoded_condition, VNatTrans::identity(&t.components[0]));
        let _ = delta;
    }

    #[test]
    fn strict_diagram_group_action_is_homomorphism() {
        let x = fixtures::z2_on_z3();
        // X(g1)∘X(g1) = X(g0) = Id: a genuine Z/2-action
        let g1 = &x.on_mor[1];
        assert_eq!(g1.compose(g1).unwrap(), x.on_mor[0]);
        assert_eq!(x.on_mor[0], VFunctor::identity(&x.on_obj[0]));
    }

    #[test]
    fn free_vcat_diagram_as_lax() {
        // a strict diagram reinterpreted as a lax diagram over the same
        // index validates with identity cells
        let i = fixtures::arrow_category();
        let kind = BaseKind::FinVect { prime: 2 };
        let a = free_vcat(kind, &fixtures::cyclic_group_cat(2));
        let d = diagonal(&a, &i);
        let lax = LaxDiagram::new(
            i.clone(),
            d.on_obj.clone(),
            d.on_mor.clone(),
            d.unit.clone(),
            d.comp.clone(),
        )
        .unwrap();
        let report = lax.validate();
        assert!(report.passed(), "{report}");
        assert!(lax.is_strict());
    }
}
