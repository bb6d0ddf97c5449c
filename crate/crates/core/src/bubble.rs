//! Bubbling up and bubbling down at the level of a single curve.
//!
//! Two up-operations insert a projective line at a degenerate point:
//! stabilization (when the new point `x` is a node or collides with
//! `p_infty`) and inflation (when the field vanishes at a smooth `x`).
//! The inverse contraction removes the unique component on which the
//! twisted degree `(#nodes − 2) + #p_infty + 2·#markings + (c−2)·#x`
//! vanishes. Round-trip laws hold up to isomorphism and are pinned by the
//! chart conventions below: new bubbles attach at ∞ (or 0/∞ for bridges),
//! the new section sits at 1 after stabilization and at 0 after
//! inflation, and the inflation lift is normalized so the field value at
//! the new section is exactly 1.

use crate::curve::{
    weight_at, ChartPoint, CompId, Component, CurveError, CurvePoint, Kind, MarkedCurve, Node,
};
use crate::diagnostics::Diagnostics;
use crate::exactalg::rat::rat;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum BubbleError {
    #[error("precondition failed:\n{0}")]
    Precondition(Diagnostics),
    /// Two components of twisted degree zero signal a broken invariant
    /// upstream; at most one may exist.
    #[error("non-unique contraction: components {0} and {1} both have degree zero")]
    NonUniqueContraction(CompId, CompId),
    #[error("bubbling down is defined for kinds C2 and C3, got {0}")]
    BadKind(Kind),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Records one inserted or contracted component, for round-trip testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    /// The collapsed component (`None` when the operation was trivial).
    pub component: Option<CompId>,
    /// The point the collapsed component maps to on the other curve.
    pub image: Option<CurvePoint>,
}

impl ContractionMap {
    pub fn trivial() -> Self {
        ContractionMap {
            component: None,
            image: None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.component.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        match (&self.component, &self.image) {
            (Some(c), Some(p)) => serde_json::json!({
                "trivial": false,
                "component": c,
                "image": {"comp": p.comp, "at": p.at.render()},
            }),
            _ => serde_json::json!({"trivial": true}),
        }
    }
}

fn require(d: Diagnostics) -> Result<(), BubbleError> {
    if d.pass() {
        Ok(())
    } else {
        Err(BubbleError::Precondition(d))
    }
}

/// Knudsen stabilization with the vector field: makes `x` smooth and
/// distinct from `p_infty`, inserting a bubble when it is not.
///
/// The input is a C1 object with section `x` (nodes and collision with
/// `p_infty` allowed). The output is a C2 object with the returned
/// section.
pub fn knudsen_stabilize(
    c: &MarkedCurve,
    x: &CurvePoint,
) -> Result<(MarkedCurve, CurvePoint, ContractionMap), BubbleError> {
    require(c.category_check(Kind::C1, Some(x)))?;

    if !c.is_node_point(x) && *x != c.p_infty {
        return Ok((c.clone(), x.clone(), ContractionMap::trivial()));
    }

    let mut out = c.clone();
    let e_id = out.fresh_component_id();

    if c.is_node_point(x) {
        // Replace the node by a bubble: first endpoint at the bubble's 0,
        // second at ∞. The bubble field −w_a·u ∂/∂u restores weight
        // matching at both new nodes.
        let pos = c
            .nodes
            .iter()
            .position(|n| n.a == *x || n.b == *x)
            .expect("x is a node point");
        let node = out.nodes.remove(pos);
        let comp_a = c.component(node.a.comp)?;
        let w_a = weight_at(&comp_a.field, &node.a.at);
        out.components.push(Component {
            id: e_id,
            field: [rat(0), -w_a, rat(0)],
        });
        out.nodes.push(Node::new(
            node.a.clone(),
            CurvePoint::new(e_id, ChartPoint::Finite(rat(0))),
        ));
        out.nodes.push(Node::new(
            node.b.clone(),
            CurvePoint::new(e_id, ChartPoint::Inf),
        ));
    } else {
        // x = p_infty: attach the bubble at the old p_infty through the
        // bubble's ∞, move p_infty to its 0, keep the weight there so the
        // coresidue is unchanged.
        let comp_a = c.component(x.comp)?;
        let w = weight_at(&comp_a.field, &x.at);
        out.components.push(Component {
            id: e_id,
            field: [rat(0), w, rat(0)],
        });
        out.nodes.push(Node::new(
            x.clone(),
            CurvePoint::new(e_id, ChartPoint::Inf),
        ));
        out.p_infty = CurvePoint::new(e_id, ChartPoint::Finite(rat(0)));
    }

    let new_x = CurvePoint::new(e_id, ChartPoint::Finite(rat(1)));
    debug_assert!(out.validate().pass(), "{}", out.validate());
    Ok((
        out,
        new_x,
        ContractionMap {
            component: Some(e_id),
            image: Some(x.clone()),
        },
    ))
}

/// Inflating at a zero of the field: makes the field nonvanishing at the
/// section, inserting a bubble at `x` when it vanishes there.
///
/// The input is a C2 object with section `x`; the output is a C3 object.
/// The bubble field is `(1 + λ·u) ∂/∂u` where `λ` is the weight of the old
/// field at `x` (the translation field `∂/∂u` when `λ = 0`), and the new
/// section sits at 0 with field value exactly 1.
pub fn inflate_at_zero(
    c: &MarkedCurve,
    x: &CurvePoint,
) -> Result<(MarkedCurve, CurvePoint, ContractionMap), BubbleError> {
    require(c.category_check(Kind::C2, Some(x)))?;

    if !c.field_value(x)?.is_zero() {
        return Ok((c.clone(), x.clone(), ContractionMap::trivial()));
    }

    let mut out = c.clone();
    let e_id = out.fresh_component_id();
    let comp = c.component(x.comp)?;
    let lambda = weight_at(&comp.field, &x.at);
    out.components.push(Component {
        id: e_id,
        field: [rat(1), lambda, rat(0)],
    });
    out.nodes.push(Node::new(
        x.clone(),
        CurvePoint::new(e_id, ChartPoint::Inf),
    ));
    let new_x = CurvePoint::new(e_id, ChartPoint::Finite(rat(0)));
    debug_assert!(out.validate().pass(), "{}", out.validate());
    Ok((
        out,
        new_x,
        ContractionMap {
            component: Some(e_id),
            image: Some(x.clone()),
        },
    ))
}

/// Bubbling down: contracts the unique component of twisted degree zero
/// (none exists for nondegenerate data, and the result is unchanged).
///
/// `kind` must be C2 or C3; the output lies in the kind one step down.
/// A tail's markings and section move to the attachment point on its
/// neighbor; a bridge's neighbors are glued directly.
pub fn bubble_down(
    c: &MarkedCurve,
    kind: Kind,
    x: &CurvePoint,
) -> Result<(MarkedCurve, CurvePoint, ContractionMap), BubbleError> {
    if !matches!(kind, Kind::C2 | Kind::C3) {
        return Err(BubbleError::BadKind(kind));
    }
    require(c.category_check(kind, Some(x)))?;

    let contract_weight = kind.extra_weight() - 1;
    let mut degree_zero = c
        .components
        .iter()
        .filter(|comp| c.twisted_degree(comp.id, contract_weight, Some(x)) == 0)
        .map(|comp| comp.id);
    let sigma = match degree_zero.next() {
        None => return Ok((c.clone(), x.clone(), ContractionMap::trivial())),
        Some(s) => {
            if let Some(other) = degree_zero.next() {
                return Err(BubbleError::NonUniqueContraction(s, other));
            }
            s
        }
    };
    debug_assert_eq!(x.comp, sigma, "the contracted component must carry x");

    let touching: Vec<Node> = c
        .nodes
        .iter()
        .filter(|n| n.on(sigma).is_some())
        .cloned()
        .collect();
    let mut out = c.clone();
    out.components.retain(|comp| comp.id != sigma);
    out.nodes.retain(|n| n.on(sigma).is_none());

    let (new_x, image) = match touching.as_slice() {
        [n] => {
            // tail: everything on sigma lands at the attachment point
            let target = n.other(sigma).expect("tail neighbor").clone();
            if out.p_infty.comp == sigma {
                out.p_infty = target.clone();
            }
            for m in &mut out.markings {
                if m.comp == sigma {
                    *m = target.clone();
                }
            }
            let new_x = if x.comp == sigma { target.clone() } else { x.clone() };
            (new_x, target)
        }
        [n1, n2] => {
            // bridge: glue the neighbors; the outer weights were already
            // opposite through sigma, so matching holds automatically
            let q1 = n1.other(sigma).expect("bridge neighbor").clone();
            let q2 = n2.other(sigma).expect("bridge neighbor").clone();
            let glued = Node::new(q1, q2);
            let target = glued.a.clone();
            out.nodes.push(glued);
            (target.clone(), target)
        }
        _ => unreachable!("degree-zero component with {} nodes", touching.len()),
    };

    debug_assert!(out.validate().pass(), "{}", out.validate());
    Ok((
        out,
        new_x,
        ContractionMap {
            component: Some(sigma),
            image: Some(image),
        },
    ))
}
