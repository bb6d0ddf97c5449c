//! Marked genus-0 nodal curves with logarithmic vector fields over Q.
//!
//! A [`MarkedCurve`] is a tree of projective-line components. Each
//! component carries one global chart and a vector field
//! `(p0 + p1·x + p2·x²) ∂/∂x` in that chart; `∞` is a legal chart point.
//! Nodes are unordered pairs of chart points on two distinct components,
//! `p_infty` is the distinguished marking where the field is co-measured,
//! and `markings` are the movable points (coincidences among them are
//! allowed).
//!
//! The *weight* of the field at one of its zeros is `p'(ν)` at a finite
//! point and `−p1` at ∞ (substitute `w = 1/x`); it is chart-independent.
//! Validity demands the field vanish at every node point with opposite
//! weights across each node. The negative coresidue [`MarkedCurve::ncr`]
//! is minus the weight at `p_infty`.

pub mod iso;
pub mod moebius;

pub use iso::{curve_isomorphic, Isomorphism};
pub use moebius::Moebius;

use crate::diagnostics::Diagnostics;
use crate::exactalg::rat::{format_rat, parse_rat, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type CompId = u32;

/// A point of a component chart: a rational number or ∞.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChartPoint {
    Finite(Rat),
    Inf,
}

impl ChartPoint {
    pub fn finite(v: Rat) -> Self {
        ChartPoint::Finite(v)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ChartPoint::Finite(v) => Some(v),
            ChartPoint::Inf => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            ChartPoint::Finite(v) => format_rat(v),
            ChartPoint::Inf => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        if s.trim() == "inf" {
            Ok(ChartPoint::Inf)
        } else {
            parse_rat(s).map(ChartPoint::Finite)
        }
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A located point: component id plus chart point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurvePoint {
    pub comp: CompId,
    pub at: ChartPoint,
}

impl CurvePoint {
    pub fn new(comp: CompId, at: ChartPoint) -> Self {
        CurvePoint { comp, at }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.comp, self.at)
    }
}

/// One irreducible component: a chart and a degree-≤2 field triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: CompId,
    /// `(p0, p1, p2)` meaning `(p0 + p1·x + p2·x²) ∂/∂x`.
    pub field: [Rat; 3],
}

/// A node: an unordered pair of points on two distinct components.
/// Endpoints are stored sorted by `(component, point)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Node {
    pub a: CurvePoint,
    pub b: CurvePoint,
}

impl Node {
    pub fn new(p: CurvePoint, q: CurvePoint) -> Self {
        if (p.comp, &p.at) <= (q.comp, &q.at) {
            Node { a: p, b: q }
        } else {
            Node { a: q, b: p }
        }
    }

    pub fn endpoints(&self) -> [&CurvePoint; 2] {
        [&self.a, &self.b]
    }

    /// The endpoint on `comp`, if any.
    pub fn on(&self, comp: CompId) -> Option<&CurvePoint> {
        self.endpoints().into_iter().find(|p| p.comp == comp)
    }

    /// The endpoint not on `comp`, if the node touches `comp`.
    pub fn other(&self, comp: CompId) -> Option<&CurvePoint> {
        match (self.a.comp == comp, self.b.comp == comp) {
            (true, false) => Some(&self.b),
            (false, true) => Some(&self.a),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("point {0} is a node of the curve")]
    SingularPoint(String),
    #[error("field does not vanish at p_infty (value {0})")]
    FieldNotVanishing(String),
    #[error("unknown component {0}")]
    UnknownComponent(CompId),
    #[error("expected {expected} shifts, got {got}")]
    BadShiftCount { expected: usize, got: usize },
    #[error("field vanishes at a marking")]
    FieldZeroAtMarking,
    #[error("precondition failed:\n{0}")]
    PreconditionFailed(Diagnostics),
}

/// Category kinds: the plain vector-field category `V` and the three
/// extra-section categories graded by the ampleness weight on the extra
/// section (`c − 1` reads 0, 1, 2 for C1, C2, C3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    V,
    C1,
    C2,
    C3,
}

impl Kind {
    pub fn extra_weight(self) -> i64 {
        match self {
            Kind::V | Kind::C1 => 0,
            Kind::C2 => 1,
            Kind::C3 => 2,
        }
    }

    pub fn has_extra(self) -> bool {
        !matches!(self, Kind::V)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::V => "V",
            Kind::C1 => "C1",
            Kind::C2 => "C2",
            Kind::C3 => "C3",
        };
        write!(f, "{s}")
    }
}

/// Value of the field triple at a chart point (`p2` at ∞; the scalar is
/// chart-dependent but its vanishing is not).
pub fn field_value_at(field: &[Rat; 3], at: &ChartPoint) -> Rat {
    match at {
        ChartPoint::Finite(v) => &field[0] + &field[1] * v + &field[2] * v * v,
        ChartPoint::Inf => field[2].clone(),
    }
}

/// Weight of the field at a chart point: `p'(ν)` at finite `ν`, `−p1`
/// at ∞. Chart-independent at zeros of the field.
pub fn weight_at(field: &[Rat; 3], at: &ChartPoint) -> Rat {
    match at {
        ChartPoint::Finite(v) => &field[1] + &field[2] * v * Rat::from_integer(2.into()),
        ChartPoint::Inf => -field[1].clone(),
    }
}

/// Whether the field vanishes to order ≥ 2 at the point.
pub fn field_vanishes_doubly(field: &[Rat; 3], at: &ChartPoint) -> bool {
    field_value_at(field, at).is_zero() && weight_at(field, at).is_zero()
}

/// A marked genus-0 nodal curve with a logarithmic vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedCurve {
    pub components: Vec<Component>,
    pub nodes: Vec<Node>,
    pub p_infty: CurvePoint,
    pub markings: Vec<CurvePoint>,
}

impl MarkedCurve {
    pub fn new(
        components: Vec<Component>,
        nodes: Vec<Node>,
        p_infty: CurvePoint,
        markings: Vec<CurvePoint>,
    ) -> Self {
        MarkedCurve {
            components,
            nodes,
            p_infty,
            markings,
        }
    }

    /// One-component curve.
    pub fn single(field: [Rat; 3], p_infty: ChartPoint, markings: Vec<ChartPoint>) -> Self {
        MarkedCurve {
            components: vec![Component { id: 0, field }],
            nodes: vec![],
            p_infty: CurvePoint::new(0, p_infty),
            markings: markings.into_iter().map(|p| CurvePoint::new(0, p)).collect(),
        }
    }

    pub fn component(&self, id: CompId) -> Result<&Component, CurveError> {
        self.components
            .iter()
            .find(|c| c.id == id)
            .ok_or(CurveError::UnknownComponent(id))
    }

    pub fn fresh_component_id(&self) -> CompId {
        self.components.iter().map(|c| c.id).max().map_or(0, |m| m + 1)
    }

    /// Node points lying on `comp`, in node order.
    pub fn node_points_on(&self, comp: CompId) -> Vec<&CurvePoint> {
        let mut out = Vec::new();
        for n in &self.nodes {
            for p in n.endpoints() {
                if p.comp == comp {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn is_node_point(&self, p: &CurvePoint) -> bool {
        self.node_points_on(p.comp).iter().any(|q| q.at == p.at)
    }

    pub fn markings_on(&self, comp: CompId) -> Vec<(usize, &CurvePoint)> {
        self.markings
            .iter()
            .enumerate()
            .filter(|(_, m)| m.comp == comp)
            .collect()
    }

    /// Number of nodes on the component (its degree in the dual tree).
    pub fn dual_degree(&self, comp: CompId) -> usize {
        self.node_points_on(comp).len()
    }

    /// Checks every structural invariant of the type and reports all
    /// violations: tree-shaped dual graph, distinctness of special points,
    /// field vanishing at nodes, and node weight matching.
    pub fn validate(&self) -> Diagnostics {
        let mut d = Diagnostics::new();
        let ids: BTreeSet<CompId> = self.components.iter().map(|c| c.id).collect();
        d.check(
            ids.len() == self.components.len(),
            "structure",
            "components",
            "duplicate component ids",
        );

        let mut points_ok = true;
        for p in self
            .nodes
            .iter()
            .flat_map(|n| n.endpoints())
            .chain(std::iter::once(&self.p_infty))
            .chain(self.markings.iter())
        {
            if !ids.contains(&p.comp) {
                d.fail("structure", p.to_string(), "reference to unknown component");
                points_ok = false;
            }
        }
        if !points_ok || ids.len() != self.components.len() {
            return d;
        }

        // Dual graph must be a connected tree on the components.
        for n in &self.nodes {
            d.check(
                n.a.comp != n.b.comp,
                "tree",
                format!("node ({}, {})", n.a, n.b),
                "self-node would raise the genus",
            );
        }
        if self.nodes.len() + 1 != self.components.len() {
            d.fail(
                "tree",
                "dual graph",
                format!(
                    "{} nodes on {} components is not a tree",
                    self.nodes.len(),
                    self.components.len()
                ),
            );
        } else {
            // connectivity by union-find over ids
            let mut parent: BTreeMap<CompId, CompId> = ids.iter().map(|&i| (i, i)).collect();
            fn find(parent: &mut BTreeMap<CompId, CompId>, i: CompId) -> CompId {
                let p = parent[&i];
                if p == i {
                    i
                } else {
                    let r = find(parent, p);
                    parent.insert(i, r);
                    r
                }
            }
            for n in &self.nodes {
                let (ra, rb) = (find(&mut parent, n.a.comp), find(&mut parent, n.b.comp));
                parent.insert(ra, rb);
            }
            let roots: BTreeSet<CompId> = ids.iter().map(|&i| find(&mut parent, i)).collect();
            d.check(
                roots.len() <= 1,
                "tree",
                "dual graph",
                "dual graph is disconnected",
            );
        }

        // Distinctness: node points on one component pairwise distinct;
        // p_infty and markings distinct from node points; p_infty distinct
        // from every marking. Markings may coincide with each other.
        for c in &self.components {
            let pts = self.node_points_on(c.id);
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    d.check(
                        pts[i].at != pts[j].at,
                        "distinctness",
                        format!("component {}", c.id),
                        format!("coincident node points at {}", pts[i].at),
                    );
                }
            }
        }
        d.check(
            !self.is_node_point(&self.p_infty),
            "distinctness",
            self.p_infty.to_string(),
            "p_infty lies at a node",
        );
        for (j, m) in self.markings.iter().enumerate() {
            d.check(
                !self.is_node_point(m),
                "distinctness",
                format!("marking {} at {}", j + 1, m),
                "marking lies at a node",
            );
            d.check(
                *m != self.p_infty,
                "distinctness",
                format!("marking {} at {}", j + 1, m),
                "marking coincides with p_infty",
            );
        }

        // Field must vanish at every node point, with matching weights.
        for n in &self.nodes {
            for p in n.endpoints() {
                if let Ok(c) = self.component(p.comp) {
                    d.check(
                        field_value_at(&c.field, &p.at).is_zero(),
                        "field-vanishing",
                        p.to_string(),
                        format!(
                            "field value {} at node",
                            format_rat(&field_value_at(&c.field, &p.at))
                        ),
                    );
                }
            }
            if let (Ok(ca), Ok(cb)) = (self.component(n.a.comp), self.component(n.b.comp)) {
                let wa = weight_at(&ca.field, &n.a.at);
                let wb = weight_at(&cb.field, &n.b.at);
                d.check(
                    (&wa + &wb).is_zero(),
                    "weight-matching",
                    format!("node ({}, {})", n.a, n.b),
                    format!("weights {} and {} do not cancel", format_rat(&wa), format_rat(&wb)),
                );
            }
        }
        d
    }

    /// Value of the field at a smooth point of the curve.
    pub fn field_value(&self, at: &CurvePoint) -> Result<Rat, CurveError> {
        if self.is_node_point(at) {
            return Err(CurveError::SingularPoint(at.to_string()));
        }
        let c = self.component(at.comp)?;
        Ok(field_value_at(&c.field, &at.at))
    }

    /// The negative coresidue: minus the weight of the field at `p_infty`.
    ///
    /// Requires the field to vanish at `p_infty`.
    pub fn ncr(&self) -> Result<Rat, CurveError> {
        let c = self.component(self.p_infty.comp)?;
        let value = field_value_at(&c.field, &self.p_infty.at);
        if !value.is_zero() {
            return Err(CurveError::FieldNotVanishing(format_rat(&value)));
        }
        Ok(-weight_at(&c.field, &self.p_infty.at))
    }

    /// Membership check for kind `V` or `C1`–`C3`, with the per-component
    /// ampleness inequality
    /// `(#nodes − 2) + #p_infty + 2·#markings + (c−1)·#extra > 0`.
    pub fn category_check(&self, kind: Kind, extra: Option<&CurvePoint>) -> Diagnostics {
        let mut d = self.validate();
        if !d.pass() {
            return d;
        }

        if kind.has_extra() && extra.is_none() {
            d.fail("extra-section", kind.to_string(), "missing extra section");
            return d;
        }
        if !kind.has_extra() && extra.is_some() {
            d.fail("extra-section", kind.to_string(), "kind V takes no extra section");
            return d;
        }
        if let Some(x) = extra {
            if self.component(x.comp).is_err() {
                d.fail("extra-section", x.to_string(), "unknown component");
                return d;
            }
        }

        // Field vanishes at p_infty.
        let pc = self.component(self.p_infty.comp).unwrap();
        d.check(
            field_value_at(&pc.field, &self.p_infty.at).is_zero(),
            "field-at-p-infty",
            self.p_infty.to_string(),
            "field does not vanish at p_infty",
        );

        // Field nonvanishing at every marking.
        for (j, m) in self.markings.iter().enumerate() {
            let c = self.component(m.comp).unwrap();
            d.check(
                !field_value_at(&c.field, &m.at).is_zero(),
                "field-at-marking",
                format!("marking {} at {}", j + 1, m),
                "field vanishes at a marking",
            );
        }

        if let Some(x) = extra {
            if matches!(kind, Kind::C2 | Kind::C3) {
                d.check(
                    !self.is_node_point(x),
                    "extra-section",
                    x.to_string(),
                    "extra section at a node",
                );
                d.check(
                    *x != self.p_infty,
                    "extra-section",
                    x.to_string(),
                    "extra section coincides with p_infty",
                );
            }
            if matches!(kind, Kind::C3) && !self.is_node_point(x) {
                let c = self.component(x.comp).unwrap();
                d.check(
                    !field_value_at(&c.field, &x.at).is_zero(),
                    "field-at-extra",
                    x.to_string(),
                    "field vanishes at the extra section",
                );
            }
        }

        for c in &self.components {
            let deg = self.twisted_degree(c.id, kind.extra_weight(), extra);
            d.check(
                deg > 0,
                "ampleness",
                format!("component {}", c.id),
                format!("twisted degree {deg} is not positive"),
            );
        }
        d
    }

    /// `deg(ω(p_infty + 2·markings + weight·extra))` on one component:
    /// `(#nodes − 2) + #p_infty + 2·#markings + weight·#extra`.
    pub fn twisted_degree(&self, comp: CompId, extra_weight: i64, extra: Option<&CurvePoint>) -> i64 {
        let nodes = self.dual_degree(comp) as i64;
        let pinf = i64::from(self.p_infty.comp == comp);
        let marks = self.markings_on(comp).len() as i64;
        let xs = extra.map_or(0, |x| i64::from(x.comp == comp));
        (nodes - 2) + pinf + 2 * marks + extra_weight * xs
    }

    /// Membership in the translation-side moduli problem: the field factors
    /// through `−2·p_infty` (order-≥2 vanishing, equivalently NCR 0), is
    /// nonvanishing at the markings, and the dual tree satisfies the two
    /// stability conditions.
    pub fn pn_object_check(&self) -> Diagnostics {
        let mut d = self.validate();
        if !d.pass() {
            return d;
        }

        let pc = self.component(self.p_infty.comp).unwrap();
        d.check(
            field_value_at(&pc.field, &self.p_infty.at).is_zero(),
            "order-two-vanishing",
            self.p_infty.to_string(),
            "field does not vanish at p_infty",
        );
        d.check(
            weight_at(&pc.field, &self.p_infty.at).is_zero(),
            "order-two-vanishing",
            self.p_infty.to_string(),
            "field vanishes only to first order at p_infty",
        );
        if let Ok(n) = self.ncr() {
            d.check(
                n.is_zero(),
                "ncr-zero",
                self.p_infty.to_string(),
                format!("NCR is {}", format_rat(&n)),
            );
        }

        for (j, m) in self.markings.iter().enumerate() {
            let c = self.component(m.comp).unwrap();
            d.check(
                !field_value_at(&c.field, &m.at).is_zero(),
                "field-at-marking",
                format!("marking {} at {}", j + 1, m),
                "field vanishes at a marking",
            );
        }

        for c in &self.components {
            let deg = self.dual_degree(c.id);
            let has_pinf = self.p_infty.comp == c.id;
            if !has_pinf {
                d.check(
                    deg != 2,
                    "stability-3a",
                    format!("component {}", c.id),
                    "component meets exactly two others and lacks p_infty",
                );
            }
            if deg == 1 {
                d.check(
                    !self.markings_on(c.id).is_empty(),
                    "stability-3b",
                    format!("component {}", c.id),
                    "end component carries no marking",
                );
                d.check(
                    !has_pinf,
                    "stability-3b",
                    format!("component {}", c.id),
                    "end component contains p_infty",
                );
            }
        }
        d
    }

    /// Time-`s` flow of a field with nilpotent matrix (double zero or
    /// identically zero): `exp(s·M)` with `M = [[p1/2, p0], [−p2, −p1/2]]`
    /// truncates to `I + s·M`.
    fn nilpotent_flow(field: &[Rat; 3], s: &Rat) -> Moebius {
        let two = Rat::from_integer(2.into());
        let half_p1 = &field[1] / &two;
        Moebius::new(
            Rat::one() + s * &half_p1,
            s * &field[0],
            -(s * &field[2]),
            Rat::one() - s * &half_p1,
        )
    }

    /// Moves marking `j` by the flow of its component field for time
    /// `shifts[j]`. Curve shape, fields, and `p_infty` are unchanged.
    pub fn gan_act(&self, shifts: &[Rat]) -> Result<MarkedCurve, CurveError> {
        let pn = self.pn_object_check();
        if !pn.pass() {
            return Err(CurveError::PreconditionFailed(pn));
        }
        if shifts.len() != self.markings.len() {
            return Err(CurveError::BadShiftCount {
                expected: self.markings.len(),
                got: shifts.len(),
            });
        }
        let mut out = self.clone();
        for (m, s) in out.markings.iter_mut().zip(shifts) {
            let c = self.component(m.comp)?;
            if field_value_at(&c.field, &m.at).is_zero() {
                return Err(CurveError::FieldZeroAtMarking);
            }
            // Nilpotency holds for every marking component of a valid
            // translation-side object (double zero of the field).
            let disc = &c.field[1] * &c.field[1]
                - &c.field[0] * &c.field[2] * Rat::from_integer(4.into());
            debug_assert!(disc.is_zero(), "marking component field is not nilpotent");
            m.at = Self::nilpotent_flow(&c.field, s).apply(&m.at);
        }
        Ok(out)
    }

    /// Rewrites the chart of one component through `m` (points on that
    /// component move, the field pushes forward). The abstract curve is
    /// unchanged up to isomorphism.
    pub fn apply_moebius(&self, comp: CompId, m: &Moebius) -> Result<MarkedCurve, CurveError> {
        self.component(comp)?;
        let mut out = self.clone();
        for c in &mut out.components {
            if c.id == comp {
                c.field = m.push_field(&c.field);
            }
        }
        let move_pt = |p: &mut CurvePoint| {
            if p.comp == comp {
                p.at = m.apply(&p.at);
            }
        };
        out.nodes = out
            .nodes
            .iter()
            .map(|n| {
                let mut a = n.a.clone();
                let mut b = n.b.clone();
                move_pt(&mut a);
                move_pt(&mut b);
                Node::new(a, b)
            })
            .collect();
        move_pt(&mut out.p_infty);
        for mk in &mut out.markings {
            move_pt(mk);
        }
        Ok(out)
    }

    /// Renames component ids through the given injective map.
    pub fn relabel_components(&self, map: &BTreeMap<CompId, CompId>) -> MarkedCurve {
        let rename = |id: CompId| *map.get(&id).unwrap_or(&id);
        let mut out = self.clone();
        for c in &mut out.components {
            c.id = rename(c.id);
        }
        out.nodes = out
            .nodes
            .iter()
            .map(|n| {
                let mut a = n.a.clone();
                let mut b = n.b.clone();
                a.comp = rename(a.comp);
                b.comp = rename(b.comp);
                Node::new(a, b)
            })
            .collect();
        out.p_infty.comp = rename(out.p_infty.comp);
        for m in &mut out.markings {
            m.comp = rename(m.comp);
        }
        out
    }

    /// DOT rendering of the dual tree with marking labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual {\n");
        for c in &self.components {
            let mut label = format!(
                "c{}\\nfield ({}, {}, {})",
                c.id,
                format_rat(&c.field[0]),
                format_rat(&c.field[1]),
                format_rat(&c.field[2])
            );
            if self.p_infty.comp == c.id {
                label.push_str(&format!("\\np_inf@{}", self.p_infty.at));
            }
            for (j, m) in self.markings_on(c.id) {
                label.push_str(&format!("\\nx{}@{}", j + 1, m.at));
            }
            s.push_str(&format!("  c{} [label=\"{}\"];\n", c.id, label));
        }
        for n in &self.nodes {
            s.push_str(&format!(
                "  c{} -- c{} [label=\"{}--{}\"];\n",
                n.a.comp, n.b.comp, n.a.at, n.b.at
            ));
        }
        s.push_str("}\n");
        s
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PointRepr {
    comp: CompId,
    at: String,
}

#[derive(Serialize, Deserialize)]
struct CompRepr {
    id: CompId,
    field: [String; 3],
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    components: Vec<CompRepr>,
    nodes: Vec<[PointRepr; 2]>,
    p_infty: PointRepr,
    markings: Vec<PointRepr>,
}

fn point_repr(p: &CurvePoint) -> PointRepr {
    PointRepr {
        comp: p.comp,
        at: p.at.render(),
    }
}

fn point_parse(p: &PointRepr) -> Result<CurvePoint, String> {
    Ok(CurvePoint::new(p.comp, ChartPoint::parse(&p.at)?))
}

impl Serialize for MarkedCurve {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        CurveRepr {
            components: self
                .components
                .iter()
                .map(|c| CompRepr {
                    id: c.id,
                    field: [
                        format_rat(&c.field[0]),
                        format_rat(&c.field[1]),
                        format_rat(&c.field[2]),
                    ],
                })
                .collect(),
            nodes: self
                .nodes
                .iter()
                .map(|n| [point_repr(&n.a), point_repr(&n.b)])
                .collect(),
            p_infty: point_repr(&self.p_infty),
            markings: self.markings.iter().map(point_repr).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MarkedCurve {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = CurveRepr::deserialize(de)?;
        let mut components = Vec::new();
        for c in &repr.components {
            let f = |s: &String| parse_rat(s).map_err(D::Error::custom);
            components.push(Component {
                id: c.id,
                field: [f(&c.field[0])?, f(&c.field[1])?, f(&c.field[2])?],
            });
        }
        let mut nodes = Vec::new();
        for [a, b] in &repr.nodes {
            nodes.push(Node::new(
                point_parse(a).map_err(D::Error::custom)?,
                point_parse(b).map_err(D::Error::custom)?,
            ));
        }
        Ok(MarkedCurve {
            components,
            nodes,
            p_infty: point_parse(&repr.p_infty).map_err(D::Error::custom)?,
            markings: repr
                .markings
                .iter()
                .map(point_parse)
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)?,
        })
    }
}
