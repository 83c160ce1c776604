//! The base symmetric monoidal category.
//!
//! Everything in this crate is enriched over a pluggable base `V` with two
//! concrete realizations:
//!
//! * `finset` — finite sets with cartesian product as the tensor. The unit
//!   is a singleton. Morphisms are total maps on labels.
//! * `finvect` — finite-dimensional vector spaces over a prime field F_p,
//!   with the Kronecker tensor. The unit is the one-dimensional space.
//!   Morphisms are matrices, stored cod-dim × dom-dim.
//!
//! Both realizations have tagged coproducts, equalizers, pullbacks, a free
//! functor from finite sets (with its comonoid structure), and an
//! "underlying set" functor `Mor(1, -)`.
//!
//! Structure morphisms — associators, unitors, the symmetry — are
//! materialized as honest morphisms rather than treated as identities, so
//! that coherence can be checked literally. Under the canonical row-major
//! layouts they happen to be permutations (the associator is even the
//! identity permutation), which is what makes exact law checking cheap.
//!
//! Layout conventions, fixed once and used everywhere:
//!
//! * tensor labels are `"(l,r)"`, ordered row-major in the input orders;
//! * coproduct labels are `"tag:label"`, blocks in input list order;
//! * subobjects of a finset object keep the ambient labels and order;
//! * subobjects of F_p^n carry synthesized labels `k0, k1, ...` and are
//!   presented by the unique reduced-row-echelon basis of the subspace,
//!   so two routes to the same subspace agree entry for entry.

pub mod matrix;

use crate::error::{Error, Result};
use matrix::Mat;
use std::fmt;

/// Which realization of the base a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    FinSet,
    FinVect { prime: u32 },
}

impl BaseKind {
    pub fn prime(&self) -> Option<u32> {
        match self {
            BaseKind::FinSet => None,
            BaseKind::FinVect { prime } => Some(*prime),
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::FinSet => write!(f, "finset"),
            BaseKind::FinVect { prime } => write!(f, "finvect(F_{prime})"),
        }
    }
}

/// An object of the base category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseObject {
    /// A finite set given by its ordered, pairwise-distinct element labels.
    FinSet { labels: Vec<String> },
    /// F_p^n with canonical ordered basis labels.
    FinVect { prime: u32, basis: Vec<String> },
}

impl BaseObject {
    pub fn finset<S: Into<String>>(labels: Vec<S>) -> BaseObject {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_distinct(&labels);
        BaseObject::FinSet { labels }
    }

    pub fn finvect<S: Into<String>>(prime: u32, basis: Vec<S>) -> BaseObject {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        assert_distinct(&basis);
        BaseObject::FinVect { prime, basis }
    }

    /// F_p^n with labels `e0, ..., e{n-1}`.
    pub fn finvect_dim(prime: u32, dim: usize) -> BaseObject {
        BaseObject::FinVect {
            prime,
            basis: (0..dim).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn kind(&self) -> BaseKind {
        match self {
            BaseObject::FinSet { .. } => BaseKind::FinSet,
            BaseObject::FinVect { prime, .. } => BaseKind::FinVect { prime: *prime },
        }
    }

    /// Number of elements (finset) or dimension (finvect).
    pub fn size(&self) -> usize {
        self.labels().len()
    }

    pub fn labels(&self) -> &[String] {
        match self {
            BaseObject::FinSet { labels } => labels,
            BaseObject::FinVect { basis, .. } => basis,
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// The monoidal unit of the given realization.
    pub fn unit(kind: BaseKind) -> BaseObject {
        match kind {
            BaseKind::FinSet => BaseObject::finset(vec!["*"]),
            BaseKind::FinVect { prime } => BaseObject::finvect(prime, vec!["*"]),
        }
    }

    /// The initial object: empty set / zero space.
    pub fn empty(kind: BaseKind) -> BaseObject {
        match kind {
            BaseKind::FinSet => BaseObject::FinSet { labels: vec![] },
            BaseKind::FinVect { prime } => BaseObject::FinVect {
                prime,
                basis: vec![],
            },
        }
    }
}

fn assert_distinct(labels: &[String]) {
    for (i, l) in labels.iter().enumerate() {
        assert!(
            !labels[..i].contains(l),
            "labels must be pairwise distinct, `{l}` repeats"
        );
    }
}

/// A morphism of the base category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseMorphism {
    pub dom: BaseObject,
    pub cod: BaseObject,
    data: MorData,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum MorData {
    /// Total map on element positions: `map[i]` is the index in `cod` of
    /// the image of element `i` of `dom`.
    Map(Vec<usize>),
    /// Matrix over F_p, cod-dim × dom-dim.
    Matrix(Mat),
}

impl BaseMorphism {
    pub fn from_map(dom: BaseObject, cod: BaseObject, map: Vec<usize>) -> BaseMorphism {
        assert!(matches!(dom.kind(), BaseKind::FinSet));
        assert_eq!(map.len(), dom.size(), "map must be total on dom");
        assert!(map.iter().all(|&i| i < cod.size()), "map image out of range");
        BaseMorphism {
            dom,
            cod,
            data: MorData::Map(map),
        }
    }

    pub fn from_matrix(dom: BaseObject, cod: BaseObject, mat: Mat) -> BaseMorphism {
        let p = match dom.kind() {
            BaseKind::FinVect { prime } => prime,
            _ => panic!("from_matrix needs finvect objects"),
        };
        assert_eq!(dom.kind(), cod.kind());
        assert_eq!(
            (mat.rows, mat.cols),
            (cod.size(), dom.size()),
            "matrix shape must be cod-dim x dom-dim"
        );
        let mut mat = mat;
        for v in &mut mat.data {
            *v %= p;
        }
        BaseMorphism {
            dom,
            cod,
            data: MorData::Matrix(mat),
        }
    }

    /// Build a morphism from a label-level function. Works in both
    /// realizations; for finvect it produces the induced basis map.
    pub fn from_label_fn(
        dom: BaseObject,
        cod: BaseObject,
        f: impl Fn(&str) -> String,
    ) -> BaseMorphism {
        let map: Vec<usize> = dom
            .labels()
            .iter()
            .map(|l| {
                let target = f(l);
                cod.label_index(&target)
                    .unwrap_or_else(|| panic!("label `{target}` not in codomain"))
            })
            .collect();
        Self::from_position_map(dom, cod, map)
    }

    /// Build the morphism sending basis/element `i` of `dom` to
    /// basis/element `map[i]` of `cod`.
    pub fn from_position_map(dom: BaseObject, cod: BaseObject, map: Vec<usize>) -> BaseMorphism {
        match dom.kind() {
            BaseKind::FinSet => Self::from_map(dom, cod, map),
            BaseKind::FinVect { .. } => {
                let mut m = Mat::zeros(cod.size(), dom.size());
                for (j, &i) in map.iter().enumerate() {
                    m.set(i, j, 1);
                }
                Self::from_matrix(dom, cod, m)
            }
        }
    }

    pub fn identity(obj: &BaseObject) -> BaseMorphism {
        match obj.kind() {
            BaseKind::FinSet => {
                Self::from_map(obj.clone(), obj.clone(), (0..obj.size()).collect())
            }
            BaseKind::FinVect { .. } => {
                Self::from_matrix(obj.clone(), obj.clone(), Mat::identity(obj.size()))
            }
        }
    }

    /// The unique morphism out of the initial object.
    pub fn from_initial(cod: &BaseObject) -> BaseMorphism {
        match cod.kind() {
            BaseKind::FinSet => Self::from_map(BaseObject::empty(cod.kind()), cod.clone(), vec![]),
            BaseKind::FinVect { .. } => Self::from_matrix(
                BaseObject::empty(cod.kind()),
                cod.clone(),
                Mat::zeros(cod.size(), 0),
            ),
        }
    }

    /// The zero morphism (finvect only).
    pub fn zero(dom: &BaseObject, cod: &BaseObject) -> BaseMorphism {
        Self::from_matrix(dom.clone(), cod.clone(), Mat::zeros(cod.size(), dom.size()))
    }

    pub fn kind(&self) -> BaseKind {
        self.dom.kind()
    }

    pub fn map(&self) -> Option<&[usize]> {
        match &self.data {
            MorData::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Option<&Mat> {
        match &self.data {
            MorData::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// `self ∘ other`. Panics when the shapes do not match; all public
    /// constructions only compose shape-checked morphisms.
    pub fn compose(&self, other: &BaseMorphism) -> BaseMorphism {
        assert_eq!(
            other.cod, self.dom,
            "compose: codomain/domain mismatch:\n  cod(other) = {:?}\n  dom(self) = {:?}",
            other.cod, self.dom
        );
        match (&self.data, &other.data) {
            (MorData::Map(g), MorData::Map(f)) => BaseMorphism {
                dom: other.dom.clone(),
                cod: self.cod.clone(),
                data: MorData::Map(f.iter().map(|&i| g[i]).collect()),
            },
            (MorData::Matrix(g), MorData::Matrix(f)) => {
                let p = self.kind().prime().unwrap();
                BaseMorphism {
                    dom: other.dom.clone(),
                    cod: self.cod.clone(),
                    data: MorData::Matrix(g.mul(f, p)),
                }
            }
            _ => unreachable!("mixed realizations survived the shape check"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && *self == BaseMorphism::identity(&self.dom)
    }

    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    /// Two-sided inverse, when one exists.
    pub fn inverse(&self) -> Option<BaseMorphism> {
        if self.dom.size() != self.cod.size() {
            return None;
        }
        match &self.data {
            MorData::Map(m) => {
                let mut inv = vec![usize::MAX; m.len()];
                for (i, &j) in m.iter().enumerate() {
                    if inv[j] != usize::MAX {
                        return None;
                    }
                    inv[j] = i;
                }
                Some(BaseMorphism {
                    dom: self.cod.clone(),
                    cod: self.dom.clone(),
                    data: MorData::Map(inv),
                })
            }
            MorData::Matrix(m) => {
                let p = self.kind().prime().unwrap();
                m.inverse(p).map(|inv| BaseMorphism {
                    dom: self.cod.clone(),
                    cod: self.dom.clone(),
                    data: MorData::Matrix(inv),
                })
            }
        }
    }

    /// Apply to a single element position (finset only).
    pub fn apply(&self, i: usize) -> usize {
        match &self.data {
            MorData::Map(m) => m[i],
            _ => panic!("apply is finset-only"),
        }
    }
}

impl fmt::Display for BaseMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            MorData::Map(m) => {
                write!(f, "{{")?;
                for (i, &j) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}→{}", self.dom.labels()[i], self.cod.labels()[j])?;
                }
                write!(f, "}}")
            }
            MorData::Matrix(m) => {
                write!(f, "[")?;
                for i in 0..m.rows {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    for j in 0..m.cols {
                        if j > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{}", m.at(i, j))?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

fn check_same_kind(a: BaseKind, b: BaseKind, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::TagMismatch(format!("{what}: {a} vs {b}")));
    }
    Ok(())
}

fn pair_label(l: &str, r: &str) -> String {
    format!("({l},{r})")
}

/// Tensor product of objects, row-major label pairing.
pub fn tensor(x: &BaseObject, y: &BaseObject) -> Result<BaseObject> {
    check_same_kind(x.kind(), y.kind(), "tensor")?;
    let labels: Vec<String> = x
        .labels()
        .iter()
        .flat_map(|l| y.labels().iter().map(move |r| pair_label(l, r)))
        .collect();
    Ok(match x.kind() {
        BaseKind::FinSet => BaseObject::FinSet { labels },
        BaseKind::FinVect { prime } => BaseObject::FinVect {
            prime,
            basis: labels,
        },
    })
}

/// Tensor product of morphisms; functorial for the row-major layout.
pub fn tensor_mor(f: &BaseMorphism, g: &BaseMorphism) -> Result<BaseMorphism> {
    check_same_kind(f.kind(), g.kind(), "tensor_mor")?;
    let dom = tensor(&f.dom, &g.dom)?;
    let cod = tensor(&f.cod, &g.cod)?;
    match (&f.data, &g.data) {
        (MorData::Map(mf), MorData::Map(mg)) => {
            let gn = g.dom.size();
            let gcn = g.cod.size();
            let mut map = Vec::with_capacity(dom.size());
            for i in 0..f.dom.size() {
                for j in 0..gn {
                    map.push(mf[i] * gcn + mg[j]);
                }
            }
            Ok(BaseMorphism::from_map(dom, cod, map))
        }
        (MorData::Matrix(mf), MorData::Matrix(mg)) => {
            let p = f.kind().prime().unwrap();
            Ok(BaseMorphism::from_matrix(dom, cod, mf.kronecker(mg, p)))
        }
        _ => unreachable!(),
    }
}

/// The associator `a : A⊗(B⊗C) → (A⊗B)⊗C`. Under the row-major layout it
/// is the identity permutation, but the objects carry different labels so
/// it is still a nontrivial, composable morphism.
pub fn associator(a: &BaseObject, b: &BaseObject, c: &BaseObject) -> Result<BaseMorphism> {
    let dom = tensor(a, &tensor(b, c)?)?;
    let cod = tensor(&tensor(a, b)?, c)?;
    let n = dom.size();
    Ok(BaseMorphism::from_position_map(dom, cod, (0..n).collect()))
}

/// Inverse associator `(A⊗B)⊗C → A⊗(B⊗C)`.
pub fn associator_inv(a: &BaseObject, b: &BaseObject, c: &BaseObject) -> Result<BaseMorphism> {
    Ok(associator(a, b, c)?.inverse().unwrap())
}

/// Left unitor `ℓ : 1⊗A → A`.
pub fn unitor_left(a: &BaseObject) -> Result<BaseMorphism> {
    let unit = BaseObject::unit(a.kind());
    let dom = tensor(&unit, a)?;
    Ok(BaseMorphism::from_position_map(
        dom,
        a.clone(),
        (0..a.size()).collect(),
    ))
}

/// Right unitor `r : A⊗1 → A`.
pub fn unitor_right(a: &BaseObject) -> Result<BaseMorphism> {
    let unit = BaseObject::unit(a.kind());
    let dom = tensor(a, &unit)?;
    Ok(BaseMorphism::from_position_map(
        dom,
        a.clone(),
        (0..a.size()).collect(),
    ))
}

pub fn unitor_left_inv(a: &BaseObject) -> Result<BaseMorphism> {
    Ok(unitor_left(a)?.inverse().unwrap())
}

pub fn unitor_right_inv(a: &BaseObject) -> Result<BaseMorphism> {
    Ok(unitor_right(a)?.inverse().unwrap())
}

/// The canonical `1 → 1⊗1`.
pub fn unit_split(kind: BaseKind) -> BaseMorphism {
    unitor_left_inv(&BaseObject::unit(kind)).unwrap()
}

/// The symmetry `t : A⊗B → B⊗A`, an involution.
pub fn symmetry(a: &BaseObject, b: &BaseObject) -> Result<BaseMorphism> {
    let dom = tensor(a, b)?;
    let cod = tensor(b, a)?;
    let (na, nb) = (a.size(), b.size());
    let mut map = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            let _ = i * nb + j; // source position, in iteration order
            map.push(j * na + i);
        }
    }
    Ok(BaseMorphism::from_position_map(dom, cod, map))
}

/// The middle-four interchange `(A⊗B)⊗(C⊗D) → (A⊗C)⊗(B⊗D)`, the
/// composite of associators and one symmetry that shuffles the middle two
/// factors. Used by the tensor of enriched categories and by every
/// coaction-compatibility square.
pub fn middle_four(
    a: &BaseObject,
    b: &BaseObject,
    c: &BaseObject,
    d: &BaseObject,
) -> Result<BaseMorphism> {
    let dom = tensor(&tensor(a, b)?, &tensor(c, d)?)?;
    let cod = tensor(&tensor(a, c)?, &tensor(b, d)?)?;
    let (nb, nc, nd) = (b.size(), c.size(), d.size());
    let mut map = vec![0usize; dom.size()];
    for i in 0..a.size() {
        for j in 0..nb {
            for k in 0..nc {
                for l in 0..nd {
                    let src = ((i * nb + j) * nc + k) * nd + l;
                    let dst = (i * nc + k) * (nb * nd) + j * nd + l;
                    map[src] = dst;
                }
            }
        }
    }
    Ok(BaseMorphism::from_position_map(dom, cod, map))
}

/// A coproduct assembled from tagged parts, together with its injections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCoproduct {
    pub tags: Vec<String>,
    pub parts: Vec<BaseObject>,
    pub total: BaseObject,
    pub injections: Vec<BaseMorphism>,
}

impl TaggedCoproduct {
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for p in &self.parts {
            offsets.push(acc);
            acc += p.size();
        }
        offsets
    }

    pub fn tag_index(&self, tag: &str) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }

    /// The unique morphism out of the coproduct restricting to the given
    /// cone along the injections.
    pub fn copair(&self, cone: &[BaseMorphism]) -> Result<BaseMorphism> {
        if cone.len() != self.parts.len() {
            return Err(Error::ShapeMismatch(
                "copair: cone length differs from part count".into(),
            ));
        }
        let cod = if cone.is_empty() {
            return Err(Error::ShapeMismatch(
                "copair of an empty coproduct needs an explicit codomain; use copair_into".into(),
            ));
        } else {
            cone[0].cod.clone()
        };
        self.copair_into(cone, &cod)
    }

    pub fn copair_into(&self, cone: &[BaseMorphism], cod: &BaseObject) -> Result<BaseMorphism> {
        for (leg, part) in cone.iter().zip(&self.parts) {
            if &leg.dom != part {
                return Err(Error::ShapeMismatch(
                    "copair: cone leg domain differs from part".into(),
                ));
            }
            if &leg.cod != cod {
                return Err(Error::ShapeMismatch(
                    "copair: cone legs do not share a codomain".into(),
                ));
            }
        }
        match self.total.kind() {
            BaseKind::FinSet => {
                let mut map = Vec::with_capacity(self.total.size());
                for (i, leg) in cone.iter().enumerate() {
                    let _ = i;
                    map.extend(leg.map().unwrap().iter().copied());
                }
                Ok(BaseMorphism::from_map(self.total.clone(), cod.clone(), map))
            }
            BaseKind::FinVect { prime } => {
                let mut m = Mat::zeros(cod.size(), self.total.size());
                let mut off = 0;
                for leg in cone {
                    let lm = leg.matrix().unwrap();
                    for r in 0..lm.rows {
                        for c in 0..lm.cols {
                            m.set(r, off + c, lm.at(r, c));
                        }
                    }
                    off += lm.cols;
                }
                let _ = prime;
                Ok(BaseMorphism::from_matrix(
                    self.total.clone(),
                    cod.clone(),
                    m,
                ))
            }
        }
    }
}

/// Canonical tagged coproduct: disjoint union with tag-prefixed labels
/// (finset) or block concatenation in summand order (finvect).
pub fn coproduct(kind: BaseKind, parts: &[(String, BaseObject)]) -> Result<TaggedCoproduct> {
    for (i, (tag, _)) in parts.iter().enumerate() {
        if parts[..i].iter().any(|(t, _)| t == tag) {
            return Err(Error::DuplicateTag(tag.clone()));
        }
    }
    for (_, part) in parts {
        check_same_kind(kind, part.kind(), "coproduct")?;
    }
    let mut labels = Vec::new();
    for (tag, part) in parts {
        for l in part.labels() {
            labels.push(format!("{tag}:{l}"));
        }
    }
    let total = match kind {
        BaseKind::FinSet => BaseObject::FinSet { labels },
        BaseKind::FinVect { prime } => BaseObject::FinVect {
            prime,
            basis: labels,
        },
    };
    let mut injections = Vec::with_capacity(parts.len());
    let mut off = 0;
    for (_, part) in parts {
        let map: Vec<usize> = (0..part.size()).map(|i| off + i).collect();
        injections.push(BaseMorphism::from_position_map(
            part.clone(),
            total.clone(),
            map,
        ));
        off += part.size();
    }
    Ok(TaggedCoproduct {
        tags: parts.iter().map(|(t, _)| t.clone()).collect(),
        parts: parts.iter().map(|(_, p)| p.clone()).collect(),
        total,
        injections,
    })
}

/// The canonical distribution isomorphism
/// `(⊕_i M_i) ⊗ N → ⊕_i (M_i ⊗ N)`.
pub fn distribute_right(
    cop: &TaggedCoproduct,
    n: &BaseObject,
) -> Result<(TaggedCoproduct, BaseMorphism)> {
    let parts: Vec<(String, BaseObject)> = cop
        .tags
        .iter()
        .zip(&cop.parts)
        .map(|(t, m)| Ok((t.clone(), tensor(m, n)?)))
        .collect::<Result<_>>()?;
    let target = coproduct(cop.total.kind(), &parts)?;
    let dom = tensor(&cop.total, n)?;
    // Row-major block layout makes this the identity permutation.
    let iso = BaseMorphism::from_position_map(dom, target.total.clone(), {
        let sz = cop.total.size() * n.size();
        (0..sz).collect()
    });
    Ok((target, iso))
}

/// The canonical distribution isomorphism
/// `N ⊗ (⊕_i M_i) → ⊕_i (N ⊗ M_i)` (a genuine permutation).
pub fn distribute_left(
    n: &BaseObject,
    cop: &TaggedCoproduct,
) -> Result<(TaggedCoproduct, BaseMorphism)> {
    let parts: Vec<(String, BaseObject)> = cop
        .tags
        .iter()
        .zip(&cop.parts)
        .map(|(t, m)| Ok((t.clone(), tensor(n, m)?)))
        .collect::<Result<_>>()?;
    let target = coproduct(cop.total.kind(), &parts)?;
    let dom = tensor(n, &cop.total)?;
    let offsets = cop.offsets();
    let total_m = cop.total.size();
    let mut map = vec![0usize; dom.size()];
    for (b, part) in cop.parts.iter().enumerate() {
        let mb = part.size();
        for i in 0..n.size() {
            for m in 0..mb {
                let src = i * total_m + offsets[b] + m;
                let dst = offsets[b] * n.size() + i * mb + m;
                map[src] = dst;
            }
        }
    }
    let iso = BaseMorphism::from_position_map(dom, target.total.clone(), map);
    Ok((target, iso))
}

/// Equalizer of a parallel pair. For finset it is the subset where the two
/// maps agree (ambient order and labels); for finvect the kernel of the
/// difference, presented by the canonical RREF basis with labels `k#`.
pub fn equalizer(f: &BaseMorphism, g: &BaseMorphism) -> Result<(BaseObject, BaseMorphism)> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::ShapeMismatch("equalizer needs a parallel pair".into()));
    }
    match (&f.data, &g.data) {
        (MorData::Map(mf), MorData::Map(mg)) => {
            let indices: Vec<usize> = (0..mf.len()).filter(|&i| mf[i] == mg[i]).collect();
            Ok(subset_object(&f.dom, &indices))
        }
        (MorData::Matrix(mf), MorData::Matrix(mg)) => {
            let p = f.kind().prime().unwrap();
            let diff = mf.sub(mg, p);
            let kernel = diff.kernel_basis(p);
            Ok(span_subobject(&f.dom, &kernel))
        }
        _ => unreachable!(),
    }
}

/// The subobject of a finset object given by element indices.
pub fn subset_object(ambient: &BaseObject, indices: &[usize]) -> (BaseObject, BaseMorphism) {
    let labels: Vec<String> = indices
        .iter()
        .map(|&i| ambient.labels()[i].clone())
        .collect();
    let sub = match ambient.kind() {
        BaseKind::FinSet => BaseObject::FinSet { labels },
        BaseKind::FinVect { prime } => BaseObject::FinVect {
            prime,
            basis: labels,
        },
    };
    let incl = BaseMorphism::from_position_map(sub.clone(), ambient.clone(), indices.to_vec());
    (sub, incl)
}

/// The subobject of F_p^n spanned by the given columns, canonicalized to
/// its unique RREF basis and labeled `k0, k1, ...`.
pub fn span_subobject(ambient: &BaseObject, columns: &Mat) -> (BaseObject, BaseMorphism) {
    let p = ambient.kind().prime().expect("span_subobject is finvect-only");
    assert_eq!(columns.rows, ambient.size());
    let canon = columns.transpose().row_space_basis(p).transpose();
    let dim = canon.cols;
    let sub = BaseObject::FinVect {
        prime: p,
        basis: (0..dim).map(|i| format!("k{i}")).collect(),
    };
    let incl = BaseMorphism::from_matrix(sub.clone(), ambient.clone(), canon);
    (sub, incl)
}

/// The image of a morphism as a canonical subobject of its codomain.
pub fn image_subobject(f: &BaseMorphism) -> (BaseObject, BaseMorphism) {
    match &f.data {
        MorData::Map(m) => {
            let indices: Vec<usize> = (0..f.cod.size()).filter(|i| m.contains(i)).collect();
            subset_object(&f.cod, &indices)
        }
        MorData::Matrix(mat) => span_subobject(&f.cod, mat),
    }
}

/// Pullback of `f : A → C`, `g : B → C`, computed as the equalizer of
/// `f∘pr₁` and `g∘pr₂` on the product (finset) or the kernel of the
/// difference on the direct sum (finvect). Returns the object and both
/// projections.
pub fn pullback(
    f: &BaseMorphism,
    g: &BaseMorphism,
) -> Result<(BaseObject, BaseMorphism, BaseMorphism)> {
    if f.cod != g.cod {
        return Err(Error::ShapeMismatch("pullback needs a shared codomain".into()));
    }
    match f.kind() {
        BaseKind::FinSet => {
            let prod = tensor(&f.dom, &g.dom)?;
            let nb = g.dom.size();
            let pr1 = BaseMorphism::from_position_map(
                prod.clone(),
                f.dom.clone(),
                (0..prod.size()).map(|x| x / nb).collect(),
            );
            let pr2 = BaseMorphism::from_position_map(
                prod.clone(),
                g.dom.clone(),
                (0..prod.size()).map(|x| x % nb).collect(),
            );
            let (obj, incl) = equalizer(&f.compose(&pr1), &g.compose(&pr2))?;
            Ok((obj, pr1.compose(&incl), pr2.compose(&incl)))
        }
        BaseKind::FinVect { prime } => {
            // Kernel of [f | -g] : A ⊕ B → C.
            let (na, nb) = (f.dom.size(), g.dom.size());
            let mf = f.matrix().unwrap();
            let mg = g.matrix().unwrap();
            let mut m = Mat::zeros(f.cod.size(), na + nb);
            for r in 0..m.rows {
                for c in 0..na {
                    m.set(r, c, mf.at(r, c));
                }
                for c in 0..nb {
                    m.set(r, na + c, (prime - mg.at(r, c)) % prime);
                }
            }
            let kernel = m.kernel_basis(prime);
            let dim = kernel.cols;
            let obj = BaseObject::FinVect {
                prime,
                basis: (0..dim).map(|i| format!("k{i}")).collect(),
            };
            let mut m1 = Mat::zeros(na, dim);
            let mut m2 = Mat::zeros(nb, dim);
            for j in 0..dim {
                for r in 0..na {
                    m1.set(r, j, kernel.at(r, j));
                }
                for r in 0..nb {
                    m2.set(r, j, kernel.at(na + r, j));
                }
            }
            let pr1 = BaseMorphism::from_matrix(obj.clone(), f.dom.clone(), m1);
            let pr2 = BaseMorphism::from_matrix(obj.clone(), g.dom.clone(), m2);
            Ok((obj, pr1, pr2))
        }
    }
}

/// Factor `g` through a monomorphism: the unique `h` with `mono ∘ h = g`.
pub fn factor_through_mono(mono: &BaseMorphism, g: &BaseMorphism) -> Result<BaseMorphism> {
    if mono.cod != g.cod {
        return Err(Error::ShapeMismatch(
            "factor_through_mono: codomain mismatch".into(),
        ));
    }
    match (&mono.data, &g.data) {
        (MorData::Map(mm), MorData::Map(mg)) => {
            let mut lookup = vec![usize::MAX; mono.cod.size()];
            for (i, &j) in mm.iter().enumerate() {
                if lookup[j] != usize::MAX {
                    return Err(Error::ShapeMismatch(
                        "factor_through_mono: not a monomorphism".into(),
                    ));
                }
                lookup[j] = i;
            }
            let mut map = Vec::with_capacity(mg.len());
            for (i, &j) in mg.iter().enumerate() {
                if lookup[j] == usize::MAX {
                    return Err(Error::ShapeMismatch(format!(
                        "factor_through_mono: image of `{}` misses the subobject",
                        g.dom.labels()[i]
                    )));
                }
                map.push(lookup[j]);
            }
            Ok(BaseMorphism::from_map(g.dom.clone(), mono.dom.clone(), map))
        }
        (MorData::Matrix(mm), MorData::Matrix(mg)) => {
            let p = mono.kind().prime().unwrap();
            if mm.rank(p) != mm.cols {
                return Err(Error::ShapeMismatch(
                    "factor_through_mono: not a monomorphism".into(),
                ));
            }
            let h = mm.solve(mg, p).map_err(|_| {
                Error::ShapeMismatch("factor_through_mono: does not factor".into())
            })?;
            Ok(BaseMorphism::from_matrix(g.dom.clone(), mono.dom.clone(), h))
        }
        _ => Err(Error::TagMismatch("factor_through_mono".into())),
    }
}

/// The free object `S⊗1` on an ordered set of labels.
pub fn free_on_set<S: Into<String>>(kind: BaseKind, labels: Vec<S>) -> BaseObject {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    assert_distinct(&labels);
    match kind {
        BaseKind::FinSet => BaseObject::FinSet { labels },
        BaseKind::FinVect { prime } => BaseObject::FinVect {
            prime,
            basis: labels,
        },
    }
}

/// The comonoid coproduct `Δ : S⊗1 → (S⊗1)⊗(S⊗1)` sending `s ↦ (s,s)`.
pub fn free_delta(obj: &BaseObject) -> BaseMorphism {
    let cod = tensor(obj, obj).unwrap();
    let n = obj.size();
    BaseMorphism::from_position_map(obj.clone(), cod, (0..n).map(|i| i * n + i).collect())
}

/// The comonoid counit `ε : S⊗1 → 1`.
pub fn free_eps(obj: &BaseObject) -> BaseMorphism {
    let unit = BaseObject::unit(obj.kind());
    match obj.kind() {
        BaseKind::FinSet => {
            BaseMorphism::from_map(obj.clone(), unit, vec![0; obj.size()])
        }
        BaseKind::FinVect { .. } => {
            let mut m = Mat::zeros(1, obj.size());
            for j in 0..obj.size() {
                m.set(0, j, 1);
            }
            BaseMorphism::from_matrix(obj.clone(), unit, m)
        }
    }
}

/// An element of `x`, i.e. a morphism `1 → x`, picking out position `i`.
pub fn basis_elem(x: &BaseObject, i: usize) -> BaseMorphism {
    BaseMorphism::from_position_map(BaseObject::unit(x.kind()), x.clone(), vec![i])
}

/// An element of a finvect object with the given coefficients.
pub fn vector_elem(x: &BaseObject, coeffs: &[u32]) -> BaseMorphism {
    let p = x.kind().prime().expect("vector_elem is finvect-only");
    assert_eq!(coeffs.len(), x.size());
    let m = Mat::from_rows(coeffs.iter().map(|&c| vec![c]).collect(), 1, p);
    BaseMorphism::from_matrix(BaseObject::unit(x.kind()), x.clone(), m)
}

/// Default cap on `Mor(1,-)` enumerations, overridable through the
/// `CATKIT_SIZE_CAP` environment variable.
pub fn default_cap() -> usize {
    std::env::var("CATKIT_SIZE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(4096)
}

/// All elements of `x` as morphisms `1 → x`. For finvect this is every
/// vector — all p^dim of them — so callers must pass a cap.
pub fn underlying_set(x: &BaseObject, cap: usize) -> Result<Vec<BaseMorphism>> {
    match x.kind() {
        BaseKind::FinSet => Ok((0..x.size()).map(|i| basis_elem(x, i)).collect()),
        BaseKind::FinVect { prime } => {
            let dim = x.size();
            let mut count: usize = 1;
            for _ in 0..dim {
                count = count
                    .checked_mul(prime as usize)
                    .filter(|&c| c <= cap)
                    .ok_or_else(|| {
                        Error::SizeCap(format!(
                            "p^dim = {prime}^{dim} exceeds the cap of {cap} elements"
                        ))
                    })?;
            }
            let mut out = Vec::with_capacity(count);
            let mut coeffs = vec![0u32; dim];
            loop {
                out.push(vector_elem(x, &coeffs));
                // big-endian odometer
                let mut k = dim;
                loop {
                    if k == 0 {
                        return Ok(out);
                    }
                    k -= 1;
                    coeffs[k] += 1;
                    if coeffs[k] < prime {
                        break;
                    }
                    coeffs[k] = 0;
                }
            }
        }
    }
}

/// A direct-sum decomposition of an ambient object: tagged parts with
/// injections that are jointly an isomorphism from the canonical coproduct
/// onto the ambient object. Generalizes [`TaggedCoproduct`], whose
/// injections are the canonical blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub ambient: BaseObject,
    pub tags: Vec<String>,
    pub parts: Vec<BaseObject>,
    /// `injections[i] : parts[i] → ambient`
    pub injections: Vec<BaseMorphism>,
}

impl Decomposition {
    /// View a canonical coproduct as a decomposition of its own total.
    pub fn from_coproduct(cop: &TaggedCoproduct) -> Decomposition {
        Decomposition {
            ambient: cop.total.clone(),
            tags: cop.tags.clone(),
            parts: cop.parts.clone(),
            injections: cop.injections.clone(),
        }
    }

    pub fn tag_index(&self, tag: &str) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }

    /// The copairing `[injections] : ⊕ parts → ambient`.
    fn assembly(&self) -> Result<BaseMorphism> {
        let kind = self.ambient.kind();
        let parts: Vec<(String, BaseObject)> = self
            .tags
            .iter()
            .cloned()
            .zip(self.parts.iter().cloned())
            .collect();
        let cop = coproduct(kind, &parts)?;
        cop.copair_into(&self.injections, &self.ambient)
    }

    /// Check that the injections jointly present the ambient object.
    pub fn validate(&self) -> Result<()> {
        if self.tags.len() != self.parts.len() || self.tags.len() != self.injections.len() {
            return Err(Error::IncompleteData(
                "decomposition: tags, parts, injections must align".into(),
            ));
        }
        for (inj, part) in self.injections.iter().zip(&self.parts) {
            if &inj.dom != part || inj.cod != self.ambient {
                return Err(Error::ShapeMismatch(
                    "decomposition: injection shape mismatch".into(),
                ));
            }
        }
        let asm = self.assembly()?;
        if asm.inverse().is_none() {
            return Err(Error::ShapeMismatch(
                "decomposition: injections are not jointly an isomorphism".into(),
            ));
        }
        Ok(())
    }

    /// Copair a cone `parts[i] → T` against the decomposition: the unique
    /// `ambient → T` restricting to the cone along each injection.
    pub fn copair_cone(&self, cone: &[BaseMorphism], cod: &BaseObject) -> Result<BaseMorphism> {
        let kind = self.ambient.kind();
        let parts: Vec<(String, BaseObject)> = self
            .tags
            .iter()
            .cloned()
            .zip(self.parts.iter().cloned())
            .collect();
        let cop = coproduct(kind, &parts)?;
        let legs = cop.copair_into(cone, cod)?;
        let asm = self.assembly()?;
        let asm_inv = asm.inverse().ok_or_else(|| {
            Error::ShapeMismatch("decomposition: injections are not jointly iso".into())
        })?;
        Ok(legs.compose(&asm_inv))
    }

    /// Factor `g : T → ambient` through the part at `tag_idx`, erroring
    /// when the image leaks outside the part.
    pub fn restrict(&self, tag_idx: usize, g: &BaseMorphism) -> Result<BaseMorphism> {
        factor_through_mono(&self.injections[tag_idx], g)
    }

    /// For a finset decomposition: which (part, position-in-part) each
    /// ambient element belongs to.
    pub fn position_lookup(&self) -> Result<Vec<(usize, usize)>> {
        let mut lookup = vec![(usize::MAX, usize::MAX); self.ambient.size()];
        for (b, inj) in self.injections.iter().enumerate() {
            let m = inj.map().ok_or_else(|| {
                Error::Unsupported("position_lookup is finset-only".into())
            })?;
            for (pos, &amb) in m.iter().enumerate() {
                if lookup[amb].0 != usize::MAX {
                    return Err(Error::ShapeMismatch(
                        "decomposition parts overlap".into(),
                    ));
                }
                lookup[amb] = (b, pos);
            }
        }
        if lookup.iter().any(|&(b, _)| b == usize::MAX) {
            return Err(Error::ShapeMismatch(
                "decomposition parts do not cover the ambient object".into(),
            ));
        }
        Ok(lookup)
    }
}

/// Assemble a morphism `ambientL ⊗ ambientR → cod` from its restrictions
/// to the tensor blocks of two decompositions. `component(i, j)` must be a
/// morphism `partsL[i] ⊗ partsR[j] → cod`. This is the distribution
/// isomorphism followed by a copairing, the pattern every enriched
/// composition table in this crate is built with.
pub fn bilinear_from_parts(
    left: &Decomposition,
    right: &Decomposition,
    cod: &BaseObject,
    component: &mut dyn FnMut(usize, usize) -> Result<BaseMorphism>,
) -> Result<BaseMorphism> {
    let kind = left.ambient.kind();
    check_same_kind(kind, right.ambient.kind(), "bilinear_from_parts")?;
    let dom = tensor(&left.ambient, &right.ambient)?;
    match kind {
        BaseKind::FinSet => {
            let ll = left.position_lookup()?;
            let rl = right.position_lookup()?;
            let mut cache: Vec<Vec<Option<BaseMorphism>>> =
                vec![vec![None; right.parts.len()]; left.parts.len()];
            let mut map = Vec::with_capacity(dom.size());
            for a in 0..left.ambient.size() {
                let (i, pa) = ll[a];
                for b in 0..right.ambient.size() {
                    let (j, pb) = rl[b];
                    if cache[i][j].is_none() {
                        let c = component(i, j)?;
                        let expected = tensor(&left.parts[i], &right.parts[j])?;
                        if c.dom != expected || &c.cod != cod {
                            return Err(Error::ShapeMismatch(
                                "bilinear_from_parts: component shape mismatch".into(),
                            ));
                        }
                        cache[i][j] = Some(c);
                    }
                    let c = cache[i][j].as_ref().unwrap();
                    map.push(c.apply(pa * right.parts[j].size() + pb));
                }
            }
            Ok(BaseMorphism::from_map(dom, cod.clone(), map))
        }
        BaseKind::FinVect { prime } => {
            // result = C ∘ D ∘ (asmL⁻¹ ⊗ asmR⁻¹) where C is the block-row
            // of components over the distributed coproduct and D is the
            // distribution permutation (identity under row-major layout
            // for the right-hand distribution; here we distribute both
            // sides at once, which is a genuine permutation).
            let asm_l = left.assembly()?.inverse().ok_or_else(|| {
                Error::ShapeMismatch("bilinear_from_parts: left not jointly iso".into())
            })?;
            let asm_r = right.assembly()?.inverse().ok_or_else(|| {
                Error::ShapeMismatch("bilinear_from_parts: right not jointly iso".into())
            })?;
            let kron = asm_l.matrix().unwrap().kronecker(asm_r.matrix().unwrap(), prime);
            let loff = {
                let mut v = Vec::new();
                let mut acc = 0;
                for p in &left.parts {
                    v.push(acc);
                    acc += p.size();
                }
                v.push(acc);
                v
            };
            let roff = {
                let mut v = Vec::new();
                let mut acc = 0;
                for p in &right.parts {
                    v.push(acc);
                    acc += p.size();
                }
                v.push(acc);
                v
            };
            let ltot = *loff.last().unwrap();
            let rtot = *roff.last().unwrap();
            let mut c_perm = Mat::zeros(cod.size(), ltot * rtot);
            for i in 0..left.parts.len() {
                for j in 0..right.parts.len() {
                    let c = component(i, j)?;
                    let expected = tensor(&left.parts[i], &right.parts[j])?;
                    if c.dom != expected || &c.cod != cod {
                        return Err(Error::ShapeMismatch(
                            "bilinear_from_parts: component shape mismatch".into(),
                        ));
                    }
                    let cm = c.matrix().unwrap();
                    let rsize = right.parts[j].size();
                    for pa in 0..left.parts[i].size() {
                        for pb in 0..rsize {
                            let col_global = (loff[i] + pa) * rtot + (roff[j] + pb);
                            let col_local = pa * rsize + pb;
                            for r in 0..cod.size() {
                                c_perm.set(r, col_global, cm.at(r, col_local));
                            }
                        }
                    }
                }
            }
            let m = c_perm.mul(&kron, prime);
            Ok(BaseMorphism::from_matrix(dom, cod.clone(), m))
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests;
