#![allow(dead_code)] // each test target compiles its own copy of this module

//! Seeded random generators shared by the property and acceptance suites.
//!
//! Curves are generated shape-first: a random tree, chart points for the
//! nodes, then fields chosen top-down so node weights match by
//! construction (a component entered with weight `w` uses the pair field
//! vanishing at its anchor and its sole child, the double-zero field on a
//! leaf, or the zero field when it has several children). Markings are
//! placed off the field zeros until every component is ample.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vfcurve::curve::{ChartPoint, CompId, Component, CurvePoint, Kind, MarkedCurve, Node};
use vfcurve::exactalg::rat::{rat, ratq, Rat};

pub fn coeff_pool() -> Vec<Rat> {
    vec![
        rat(0),
        rat(1),
        rat(2),
        rat(3),
        rat(5),
        rat(-1),
        rat(-2),
        ratq(1, 2),
        ratq(-3, 2),
    ]
}

fn point_pool() -> Vec<ChartPoint> {
    let mut pts: Vec<ChartPoint> = coeff_pool().into_iter().map(ChartPoint::Finite).collect();
    pts.push(ChartPoint::Inf);
    pts
}

/// Field with a double zero at `p`: `c·(x − p)²` (or `c ∂/∂x` at ∞).
fn double_zero_field(p: &ChartPoint, c: &Rat) -> [Rat; 3] {
    match p {
        ChartPoint::Inf => [c.clone(), rat(0), rat(0)],
        ChartPoint::Finite(v) => [c * v * v, -(c * v * rat(2)), c.clone()],
    }
}

/// Field vanishing exactly at `z1` and `z2` with weight `w1` at `z1`.
fn pair_field(z1: &ChartPoint, z2: &ChartPoint, w1: &Rat) -> [Rat; 3] {
    match (z1, z2) {
        (ChartPoint::Finite(a), ChartPoint::Finite(b)) => {
            let c = w1 / (a - b);
            [&c * a * b, -(&c * (a + b)), c]
        }
        (ChartPoint::Finite(a), ChartPoint::Inf) => [-(w1 * a), w1.clone(), rat(0)],
        (ChartPoint::Inf, ChartPoint::Finite(b)) => [w1 * b, -w1.clone(), rat(0)],
        (ChartPoint::Inf, ChartPoint::Inf) => unreachable!("distinct zeros"),
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

struct CompPlan {
    parent: Option<usize>,
    children: Vec<usize>,
    anchor: Option<ChartPoint>,
    child_points: Vec<ChartPoint>,
    field: [Rat; 3],
    forbidden: Vec<ChartPoint>,
}

/// One attempt at a random C1 object with at most `max_marks` markings.
/// Returns the curve; `None` when the sampled shape is inconsistent.
fn try_random_c1(rng: &mut ChaCha8Rng, max_marks: usize) -> Option<MarkedCurve> {
    let k = *pick(rng, &[1usize, 1, 1, 2, 2, 2, 3, 3, 4]);
    let mut parent: Vec<Option<usize>> = vec![None];
    for i in 1..k {
        parent.push(Some(rng.gen_range(0..i)));
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 1..k {
        children[parent[i].unwrap()].push(i);
    }
    // a component handing weight 0 to a single-child child would strand it
    for c in 0..k {
        let gives_zero = children[c].len() >= 2;
        if gives_zero
            && children[c]
                .iter()
                .any(|&ch| children[ch].len() == 1)
        {
            return None;
        }
        // and a chain cannot feed a star: nonzero weight into a zero field
        if children[c].len() == 1 {
            let ch = children[c][0];
            if children[ch].len() >= 2 {
                return None;
            }
        }
    }

    let pool = point_pool();
    let mut plans: Vec<CompPlan> = (0..k)
        .map(|i| CompPlan {
            parent: parent[i],
            children: children[i].clone(),
            anchor: None,
            child_points: Vec::new(),
            field: [rat(0), rat(0), rat(0)],
            forbidden: Vec::new(),
        })
        .collect();

    // chart points for nodes: on each component, anchor plus child points
    // must be pairwise distinct
    for i in 0..k {
        let mut used: Vec<ChartPoint> = Vec::new();
        if plans[i].parent.is_some() {
            let a = pick(rng, &pool).clone();
            used.push(a.clone());
            plans[i].anchor = Some(a);
        }
        for _ in 0..plans[i].children.len() {
            let mut tries = 0;
            let p = loop {
                let p = pick(rng, &pool).clone();
                if !used.contains(&p) {
                    break p;
                }
                tries += 1;
                if tries > 30 {
                    return None;
                }
            };
            used.push(p.clone());
            plans[i].child_points.push(p);
        }
    }

    // p_infty on the root, distinct from its node points
    let p_inf_at = {
        let used = plans[0].child_points.clone();
        let mut tries = 0;
        loop {
            let p = pick(rng, &pool).clone();
            if !used.contains(&p) {
                break p;
            }
            tries += 1;
            if tries > 30 {
                return None;
            }
        }
    };

    // fields top-down; incoming[i] = required weight at the anchor of i
    let nonzero: Vec<Rat> = [1i64, 2, -1, -2, 3]
        .iter()
        .map(|&v| rat(v))
        .collect();
    let mut incoming: Vec<Option<Rat>> = vec![None; k];
    let mut order: Vec<usize> = vec![0];
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &ch in &plans[i].children {
            order.push(ch);
        }
    }
    for &i in &order {
        let is_root = plans[i].parent.is_none();
        let n_children = plans[i].children.len();
        let anchor_pt = if is_root {
            p_inf_at.clone()
        } else {
            plans[i].anchor.clone().unwrap()
        };
        let w_in: Rat = if is_root {
            if n_children >= 2 {
                rat(0)
            } else {
                // NCR of the object is −w at p_infty; any value works
                pick(rng, &nonzero).clone()
            }
        } else {
            incoming[i].clone().unwrap()
        };

        let (field, child_weights): ([Rat; 3], Vec<Rat>) = match n_children {
            0 => {
                if w_in.is_zero() {
                    let c = pick(rng, &nonzero).clone();
                    (double_zero_field(&anchor_pt, &c), vec![])
                } else {
                    // second zero somewhere off the anchor; forbid markings there
                    let mut tries = 0;
                    let q = loop {
                        let q = pick(rng, &pool).clone();
                        if q != anchor_pt {
                            break q;
                        }
                        tries += 1;
                        if tries > 30 {
                            return None;
                        }
                    };
                    plans[i].forbidden.push(q.clone());
                    (pair_field(&anchor_pt, &q, &w_in), vec![])
                }
            }
            1 => {
                if w_in.is_zero() {
                    return None;
                }
                let child_pt = plans[i].child_points[0].clone();
                let field = pair_field(&anchor_pt, &child_pt, &w_in);
                (field, vec![-w_in.clone()])
            }
            _ => {
                if !w_in.is_zero() {
                    return None;
                }
                let field = [rat(0), rat(0), rat(0)];
                (field, vec![rat(0); n_children])
            }
        };
        plans[i].field = field;
        for (slot, &ch) in plans[i].children.clone().iter().enumerate() {
            incoming[ch] = Some(-child_weights[slot].clone());
        }
    }

    // markings: per-component minimum for ampleness, then extras
    let mut marks: Vec<CurvePoint> = Vec::new();
    let mut need: Vec<usize> = Vec::new();
    for i in 0..k {
        let nodes = plans[i].children.len() + usize::from(plans[i].parent.is_some());
        let has_pinf = i == 0;
        let deg = nodes as i64 - 2 + i64::from(has_pinf);
        let m_min = if deg > 0 { 0 } else { ((1 - deg) as usize).div_ceil(2) };
        need.push(m_min);
    }
    let total_min: usize = need.iter().sum();
    if total_min > max_marks {
        return None;
    }
    let n_marks = rng.gen_range(total_min.max(1)..=max_marks.max(1));
    let mut remaining = n_marks.saturating_sub(total_min);
    let mut per_comp = need;
    // extra markings only fit where the field is not identically zero
    let markable: Vec<usize> = (0..k)
        .filter(|&i| plans[i].field.iter().any(|c| !c.is_zero()))
        .collect();
    if markable.is_empty() {
        return None;
    }
    while remaining > 0 {
        per_comp[markable[rng.gen_range(0..markable.len())]] += 1;
        remaining -= 1;
    }
    for i in 0..k {
        let plan = &plans[i];
        let mut used_nodes: Vec<ChartPoint> = plan.child_points.clone();
        if let Some(a) = &plan.anchor {
            used_nodes.push(a.clone());
        }
        if i == 0 {
            used_nodes.push(p_inf_at.clone());
        }
        let mut placed: Vec<ChartPoint> = Vec::new();
        for _ in 0..per_comp[i] {
            // occasionally reuse a placed marking position (collisions are legal)
            if !placed.is_empty() && rng.gen_bool(0.15) {
                let p = placed[rng.gen_range(0..placed.len())].clone();
                marks.push(CurvePoint::new(i as CompId, p));
                continue;
            }
            let mut tries = 0;
            let p = loop {
                let p = pick(rng, &pool).clone();
                let v = vfcurve::curve::field_value_at(&plan.field, &p);
                if !used_nodes.contains(&p) && !plan.forbidden.contains(&p) && !v.is_zero() {
                    break p;
                }
                tries += 1;
                if tries > 60 {
                    return None;
                }
            };
            placed.push(p.clone());
            marks.push(CurvePoint::new(i as CompId, p));
        }
    }
    if marks.is_empty() {
        return None;
    }

    let components: Vec<Component> = plans
        .iter()
        .enumerate()
        .map(|(i, p)| Component {
            id: i as CompId,
            field: p.field.clone(),
        })
        .collect();
    let mut nodes = Vec::new();
    for (i, plan) in plans.iter().enumerate() {
        for (slot, &ch) in plan.children.iter().enumerate() {
            nodes.push(Node::new(
                CurvePoint::new(i as CompId, plan.child_points[slot].clone()),
                CurvePoint::new(ch as CompId, plans[ch].anchor.clone().unwrap()),
            ));
        }
    }
    Some(MarkedCurve::new(
        components,
        nodes,
        CurvePoint::new(0, p_inf_at),
        marks,
    ))
}

/// A random object of the plain vector-field category (also a C1 object
/// for any choice of extra section).
pub fn random_c1(rng: &mut ChaCha8Rng, max_marks: usize) -> MarkedCurve {
    loop {
        if let Some(c) = try_random_c1(rng, max_marks) {
            let d = c.category_check(Kind::V, None);
            if d.pass() {
                return c;
            }
            panic!("generator produced an invalid curve:\n{d}\n{c:?}");
        }
    }
}

/// Candidate insertion points on the curve: nodes, `p_infty`, markings,
/// smooth points, and the rational field zeros (inflation sites).
pub fn insertion_points(rng: &mut ChaCha8Rng, c: &MarkedCurve) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    if let Some(n) = c.nodes.first() {
        out.push(n.a.clone());
    }
    out.push(c.p_infty.clone());
    out.push(c.markings[0].clone());
    // one random smooth non-marking point
    let pool = point_pool();
    for _ in 0..40 {
        let comp = &c.components[rng.gen_range(0..c.components.len())];
        let p = CurvePoint::new(comp.id, pick(rng, &pool).clone());
        if !c.is_node_point(&p) && p != c.p_infty {
            out.push(p);
            break;
        }
    }
    out
}

/// Smooth rational zeros of the field, per component (inflation sites).
pub fn smooth_field_zeros(c: &MarkedCurve) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for comp in &c.components {
        let [p0, p1, p2] = &comp.field;
        let mut candidates: Vec<ChartPoint> = Vec::new();
        if p2.is_zero() {
            candidates.push(ChartPoint::Inf);
            if !p1.is_zero() {
                candidates.push(ChartPoint::Finite(-(p0 / p1)));
            }
        } else {
            let disc = p1 * p1 - rat(4) * p0 * p2;
            if let Some(s) = vfcurve::exactalg::rat::sqrt_rat(&disc) {
                for sign in [rat(1), rat(-1)] {
                    candidates.push(ChartPoint::Finite((-p1 + &sign * &s) / (rat(2) * p2)));
                }
            }
        }
        for at in candidates {
            let p = CurvePoint::new(comp.id, at);
            if !c.is_node_point(&p) && p != c.p_infty {
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
