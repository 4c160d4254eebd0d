//! The structured bounded-set class: finite unions of box-with-tail convex
//! bodies in a `k`-block sequence-space model.
//!
//! The ambient space is `k` blocks of a null-sequence space under the
//! blockwise sup-norm. A [`BlockBox`] describes one block of a body: a finite
//! head box (per-coordinate center and radius) together with a uniform tail
//! radius bounding every coordinate past the head. A [`BoxTail`] is one such
//! body across all blocks, and a [`StructuredSet`] is a finite union of
//! bodies, optionally flagged as denoting the closed convex hull of that
//! union.
//!
//! Every coordinate beyond a declared head behaves like a head coordinate
//! with center `0` and radius `tail_radius`, so heads may be extended (or
//! aligned between operands) without changing the denoted set. All values are
//! immutable and all operations are pure.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One block of a box-with-tail body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockBox {
    /// Head centers; `center.len()` is the head length of this block.
    pub center: Vec<f64>,
    /// Nonnegative head radii, same length as `center`.
    pub head_radii: Vec<f64>,
    /// Nonnegative radius bounding all coordinates past the head.
    pub tail_radius: f64,
}

impl BlockBox {
    /// Block with empty head and tail radius `r` (a tail ball).
    pub fn tail_ball(r: f64) -> Self {
        BlockBox {
            center: Vec::new(),
            head_radii: Vec::new(),
            tail_radius: r,
        }
    }

    /// Degenerate block holding a single head point.
    pub fn point(center: Vec<f64>) -> Self {
        let radii = vec![0.0; center.len()];
        BlockBox {
            center,
            head_radii: radii,
            tail_radius: 0.0,
        }
    }

    /// Center/radius of coordinate `i`, extending past the head as `(0, tail)`.
    #[inline]
    pub fn coord_interval(&self, i: usize) -> (f64, f64) {
        if i < self.center.len() {
            (self.center[i], self.head_radii[i])
        } else {
            (0.0, self.tail_radius)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.center.len() != self.head_radii.len() {
            return Err(Error::InvalidParameter(format!(
                "head center length {} differs from radii length {}",
                self.center.len(),
                self.head_radii.len()
            )));
        }
        for &c in &self.center {
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        for &a in &self.head_radii {
            if !a.is_finite() {
                return Err(Error::NonFinite);
            }
            if a < 0.0 {
                return Err(Error::NegativeRadius(a));
            }
        }
        if !self.tail_radius.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.tail_radius < 0.0 {
            return Err(Error::NegativeRadius(self.tail_radius));
        }
        Ok(())
    }

    /// Sup-norm of this block over the body: largest head excursion or tail radius.
    pub fn norm(&self) -> f64 {
        let mut m = self.tail_radius;
        for i in 0..self.center.len() {
            m = m.max(self.center[i].abs() + self.head_radii[i]);
        }
        m
    }
}

/// A box-with-tail body: one [`BlockBox`] per block.
///
/// Serialized as a plain array of per-block records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxTail {
    pub blocks: Vec<BlockBox>,
}

impl BoxTail {
    pub fn new(blocks: Vec<BlockBox>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter("a body needs at least one block".into()));
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(BoxTail { blocks })
    }

    /// The origin point of a `k`-block model.
    pub fn origin(k: usize) -> Self {
        BoxTail {
            blocks: (0..k).map(|_| BlockBox::point(Vec::new())).collect(),
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Ambient norm of the body (sup of member-point norms).
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(BlockBox::norm).fold(0.0, f64::max)
    }

    /// True when every tail radius is zero, i.e. the body is compact.
    pub fn is_compact(&self) -> bool {
        self.blocks.iter().all(|b| b.tail_radius == 0.0)
    }

    /// Whether the finitely-supported point `p` (flattened per block over its
    /// head coordinates) lies in the body.
    pub fn contains_point(&self, p: &[Vec<f64>]) -> bool {
        if p.len() != self.blocks.len() {
            return false;
        }
        for (blk, coords) in self.blocks.iter().zip(p) {
            for (i, &x) in coords.iter().enumerate() {
                let (c, a) = blk.coord_interval(i);
                if (x - c).abs() > a {
                    return false;
                }
            }
            // Coordinates past the supplied prefix are zero and must fit the
            // head boxes they fall into.
            for i in coords.len()..blk.center.len() {
                let (c, a) = blk.coord_interval(i);
                if c.abs() > a {
                    return false;
                }
            }
        }
        true
    }

    fn sum(&self, other: &BoxTail) -> BoxTail {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| {
                let n = x.center.len().max(y.center.len());
                let mut center = Vec::with_capacity(n);
                let mut radii = Vec::with_capacity(n);
                for i in 0..n {
                    let (cx, ax) = x.coord_interval(i);
                    let (cy, ay) = y.coord_interval(i);
                    center.push(cx + cy);
                    radii.push(ax + ay);
                }
                BlockBox {
                    center,
                    head_radii: radii,
                    tail_radius: x.tail_radius + y.tail_radius,
                }
            })
            .collect();
        BoxTail { blocks }
    }

    fn scaled(&self, k: f64) -> BoxTail {
        let a = k.abs();
        let blocks = self
            .blocks
            .iter()
            .map(|b| BlockBox {
                center: b.center.iter().map(|c| c * k).collect(),
                head_radii: b.head_radii.iter().map(|r| r * a).collect(),
                tail_radius: b.tail_radius * a,
            })
            .collect();
        BoxTail { blocks }
    }
}

/// A nonempty finite union of box-with-tail bodies.
///
/// When `convexified` is set the value denotes the closed convex hull of the
/// union; support evaluation is the pointwise max over members either way, so
/// every hull-invariant quantity ignores the flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredSet {
    pub members: Vec<BoxTail>,
    pub convexified: bool,
}

impl StructuredSet {
    pub fn new(members: Vec<BoxTail>, convexified: bool) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySet("a structured set needs at least one member"));
        }
        let k = members[0].block_count();
        for m in &members {
            if m.block_count() != k {
                return Err(Error::BlockMismatch {
                    left: k,
                    right: m.block_count(),
                });
            }
            for b in &m.blocks {
                b.validate()?;
            }
        }
        Ok(StructuredSet {
            members,
            convexified,
        })
    }

    /// Re-checks the construction invariants, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.members.clone(), self.convexified).map(|_| ())
    }

    /// Single-body convex set.
    pub fn body(body: BoxTail) -> Self {
        StructuredSet {
            members: vec![body],
            convexified: true,
        }
    }

    /// The singleton `{0}` of a `k`-block model.
    pub fn origin(k: usize) -> Self {
        Self::body(BoxTail::origin(k))
    }

    /// Singleton point with the given per-block head coordinates.
    pub fn point(coords: Vec<Vec<f64>>) -> Result<Self> {
        let blocks = coords.into_iter().map(BlockBox::point).collect();
        Ok(Self::body(BoxTail::new(blocks)?))
    }

    /// Ball of radius `r` about the origin: every coordinate of every block
    /// bounded by `r`.
    pub fn ball(k: usize, r: f64) -> Self {
        Self::body(BoxTail {
            blocks: (0..k).map(|_| BlockBox::tail_ball(r)).collect(),
        })
    }

    /// The closed unit ball of the `k`-block model.
    pub fn unit_ball(k: usize) -> Self {
        Self::ball(k, 1.0)
    }

    pub fn block_count(&self) -> usize {
        self.members[0].block_count()
    }

    /// Longest head declared for block `blk` across members.
    pub fn head_len(&self, blk: usize) -> usize {
        self.members
            .iter()
            .map(|m| m.blocks[blk].center.len())
            .max()
            .unwrap_or(0)
    }

    /// True when all members are compact (every tail radius zero).
    pub fn is_compact(&self) -> bool {
        self.members.iter().all(BoxTail::is_compact)
    }

    fn check_blocks(&self, other: &StructuredSet) {
        assert_eq!(
            self.block_count(),
            other.block_count(),
            "structured sets from different block models"
        );
    }

    /// Minkowski sum: union over member pairs of the body sums. The result is
    /// flagged convexified only when both operands are; with mixed flags the
    /// member list represents the sum up to closed convex hull.
    pub fn minkowski_sum(&self, other: &StructuredSet) -> StructuredSet {
        self.check_blocks(other);
        let mut members = Vec::with_capacity(self.members.len() * other.members.len());
        for x in &self.members {
            for y in &other.members {
                members.push(x.sum(y));
            }
        }
        StructuredSet {
            members,
            convexified: self.convexified && other.convexified,
        }
    }

    /// Scalar multiple: centers scale by `k`, radii by `|k|`.
    pub fn scale(&self, k: f64) -> StructuredSet {
        StructuredSet {
            members: self.members.iter().map(|m| m.scaled(k)).collect(),
            convexified: self.convexified,
        }
    }

    /// Plain union of the two member lists (not convexified).
    pub fn union(&self, other: &StructuredSet) -> StructuredSet {
        self.check_blocks(other);
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        StructuredSet {
            members,
            convexified: false,
        }
    }

    /// Closed convex hull of the union of the two sets.
    pub fn convexify_union(&self, other: &StructuredSet) -> StructuredSet {
        let mut u = self.union(other);
        u.convexified = true;
        u
    }

    /// The same member list flagged as a convex hull.
    pub fn convex_hull(&self) -> StructuredSet {
        let mut s = self.clone();
        s.convexified = true;
        s
    }

    /// Per-block tail radii of the set: componentwise max over members. The
    /// embedding kills every compact part (heads and centers vanish), is
    /// additive under [`minkowski_sum`](Self::minkowski_sum), scales with
    /// `|k|`, and is monotone in the quotient order decided by
    /// [`contains_leq`](Self::contains_leq).
    pub fn v_embed(&self) -> VElement {
        let k = self.block_count();
        let mut radii = vec![0.0_f64; k];
        for m in &self.members {
            for (j, b) in m.blocks.iter().enumerate() {
                radii[j] = radii[j].max(b.tail_radius);
            }
        }
        VElement { radii }
    }

    /// Ball-covering measure of the set: the sup-norm of its tail radii.
    /// Vanishes exactly on compact structured sets.
    pub fn beta(&self) -> f64 {
        self.v_embed().norm()
    }

    /// Two-sided bracket `[beta, 2 beta]` for the diameter-splitting measure,
    /// which has no closed form on this class.
    pub fn alpha_bracket(&self) -> (f64, f64) {
        let b = self.beta();
        (b, 2.0 * b)
    }

    /// Decides the quotient order up to `eps`: true iff the tail radii of
    /// `self` are componentwise at most those of `other` plus `eps`. Compact
    /// parts never matter, so any compact set sits below everything.
    pub fn contains_leq(&self, other: &StructuredSet, eps: f64) -> bool {
        self.check_blocks(other);
        let a = self.v_embed();
        let b = other.v_embed();
        a.radii
            .iter()
            .zip(&b.radii)
            .all(|(x, y)| *x <= *y + eps)
    }
}

/// A point of the radii cone: one nonnegative tail radius per block.
#[derive(Debug, Clone, PartialEq)]
pub struct VElement {
    radii: Vec<f64>,
}

impl VElement {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidParameter("radii vector needs at least one block".into()));
        }
        for &r in &radii {
            if !r.is_finite() {
                return Err(Error::NonFinite);
            }
            if r < 0.0 {
                return Err(Error::NegativeRadius(r));
            }
        }
        Ok(VElement { radii })
    }

    /// Constant radii vector `c * (1, ..., 1)`.
    pub fn uniform(k: usize, c: f64) -> Self {
        VElement {
            radii: vec![c; k],
        }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn block_count(&self) -> usize {
        self.radii.len()
    }

    /// Sup of the entries.
    pub fn norm(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    pub fn add(&self, other: &VElement) -> VElement {
        VElement {
            radii: self
                .radii
                .iter()
                .zip(&other.radii)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> VElement {
        let a = k.abs();
        VElement {
            radii: self.radii.iter().map(|r| r * a).collect(),
        }
    }

    /// Sup-norm of the componentwise difference.
    pub fn sup_diff(&self, other: &VElement) -> f64 {
        self.radii
            .iter()
            .zip(&other.radii)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Serialize for VElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("VElement", 2)?;
        s.serialize_field("radii", &self.radii)?;
        s.serialize_field("norm", &self.norm())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for VElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            radii: Vec<f64>,
            #[serde(default)]
            #[allow(dead_code)]
            norm: Option<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        VElement::new(raw.radii).map_err(D::Error::custom)
    }
}
