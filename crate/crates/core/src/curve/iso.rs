//! Isomorphism testing via canonical forms.
//!
//! Curves are compared by rooting the dual tree at the `p_infty`
//! component and canonicalizing each component chart bottom-up. Per
//! component, the anchor (node toward the parent, or `p_infty` at the
//! root) goes to ∞; the residual affine freedom is resolved by trying a
//! finite, isomorphism-equivariant set of candidate charts (pinned by
//! pairs of special points, by one special point plus a field
//! normalization, or by the field alone) and keeping the
//! lexicographically least resulting form. Components whose data leaves a
//! continuous stabilizer come out canonical for free: the surviving
//! freedom cannot change the serialized form.

use super::moebius::Moebius;
use super::{ChartPoint, CompId, MarkedCurve};
use crate::exactalg::rat::{sqrt_rat, Rat};
use num_traits::{One, Zero};

/// A matched pair of curves: for each component pair, the chart map
/// carrying the first curve's chart to the second's.
#[derive(Debug, Clone)]
pub struct Isomorphism {
    pub comp_map: Vec<(CompId, CompId, Moebius)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct CanonTree {
    field: [Rat; 3],
    markings: Vec<(usize, Rat)>,
    children: Vec<(CanonTree, Rat)>,
}

struct CanonNode {
    comp: CompId,
    chart: Moebius,
    form: CanonTree,
    children: Vec<CanonNode>,
}

/// Finite rational zeros of `p0 + p1·x + p2·x²` (empty for the zero field).
fn rational_zeros(field: &[Rat; 3]) -> Vec<Rat> {
    let two = Rat::from_integer(2.into());
    if field[2].is_zero() {
        if field[1].is_zero() {
            return vec![];
        }
        return vec![-&field[0] / &field[1]];
    }
    let four = Rat::from_integer(4.into());
    let disc = &field[1] * &field[1] - &four * &field[0] * &field[2];
    match sqrt_rat(&disc) {
        None => vec![],
        Some(s) => {
            let den = &two * &field[2];
            let r1 = (-&field[1] + &s) / &den;
            let r2 = (-&field[1] - &s) / &den;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
    }
}

/// Scale `λ` such that `v = x/λ` best normalizes the field
/// `(r0/λ, r1, r2λ)`: leading coefficient to 1 when quadratic, constant
/// coefficient to 1 otherwise, identity when scale-invariant.
fn scale_normalizer(r: &[Rat; 3]) -> Rat {
    if !r[2].is_zero() {
        Rat::one() / &r[2]
    } else if !r[0].is_zero() {
        r[0].clone()
    } else {
        Rat::one()
    }
}

fn expect_finite(p: ChartPoint) -> Rat {
    match p {
        ChartPoint::Finite(v) => v,
        ChartPoint::Inf => unreachable!("special point collided with the anchor"),
    }
}

fn canon_node(curve: &MarkedCurve, comp: CompId, anchor: &ChartPoint, parent: Option<CompId>) -> CanonNode {
    let mut kids: Vec<(ChartPoint, CanonNode)> = Vec::new();
    for n in &curve.nodes {
        if let (Some(here), Some(there)) = (n.on(comp), n.other(comp)) {
            if Some(there.comp) == parent {
                continue;
            }
            kids.push((
                here.at.clone(),
                canon_node(curve, there.comp, &there.at, Some(comp)),
            ));
        }
    }

    let field = curve.component(comp).expect("component exists").field.clone();
    let psi0 = Moebius::send_to_inf(anchor);
    let field0 = psi0.push_field(&field);

    let mut pool: Vec<Rat> = Vec::new();
    for (_, m) in curve.markings_on(comp) {
        pool.push(expect_finite(psi0.apply(&m.at)));
    }
    for (attach, _) in &kids {
        pool.push(expect_finite(psi0.apply(attach)));
    }
    pool.extend(rational_zeros(&field0));
    pool.sort();
    pool.dedup();

    let mut candidates: Vec<Moebius> = Vec::new();
    for u in &pool {
        for v in &pool {
            if u != v {
                let den = v - u;
                candidates.push(Moebius::affine(Rat::one() / &den, -u / &den));
            }
        }
    }
    for u in &pool {
        let translated = Moebius::affine(Rat::one(), -u.clone()).push_field(&field0);
        // A single special point pins the chart only together with a scale
        // from the field; when the translated field is scale-invariant the
        // residual scaling is a stabilizer, which is harmless only if no
        // other special point exists.
        let scale_pinned = !translated[2].is_zero() || !translated[0].is_zero();
        if scale_pinned || pool.len() == 1 {
            let lambda = scale_normalizer(&translated);
            candidates.push(Moebius::affine(Rat::one() / &lambda, -u / &lambda));
        }
    }
    if pool.is_empty() {
        if !field0[2].is_zero() {
            // no special points: pin by the quadratic's vertex
            let beta = &field0[1] / (&field0[2] * Rat::from_integer(2.into()));
            let translated = Moebius::affine(Rat::one(), beta.clone()).push_field(&field0);
            let lambda = scale_normalizer(&translated);
            candidates.push(Moebius::affine(Rat::one() / &lambda, &beta / &lambda));
        } else {
            let lambda = scale_normalizer(&field0);
            candidates.push(Moebius::affine(Rat::one() / &lambda, Rat::zero()));
        }
    }

    let mut best: Option<(CanonTree, Moebius, Vec<usize>)> = None;
    for g in candidates {
        let sigma = g.compose(&psi0);
        let cfield = sigma.push_field(&field);
        let markings: Vec<(usize, Rat)> = curve
            .markings_on(comp)
            .into_iter()
            .map(|(j, m)| (j, expect_finite(sigma.apply(&m.at))))
            .collect();
        let mut order: Vec<usize> = (0..kids.len()).collect();
        let keyed: Vec<(CanonTree, Rat)> = kids
            .iter()
            .map(|(attach, kid)| (kid.form.clone(), expect_finite(sigma.apply(attach))))
            .collect();
        order.sort_by(|&i, &j| keyed[i].cmp(&keyed[j]));
        let children: Vec<(CanonTree, Rat)> = order.iter().map(|&i| keyed[i].clone()).collect();
        let form = CanonTree {
            field: cfield,
            markings,
            children,
        };
        let better = match &best {
            None => true,
            Some((b, _, _)) => form < *b,
        };
        if better {
            best = Some((form, sigma, order));
        }
    }

    let (form, chart, order) = best.expect("at least one candidate chart exists");
    let mut kid_nodes: Vec<Option<CanonNode>> = kids.into_iter().map(|(_, k)| Some(k)).collect();
    let children: Vec<CanonNode> = order
        .into_iter()
        .map(|i| kid_nodes[i].take().expect("each child used once"))
        .collect();
    CanonNode {
        comp,
        chart,
        form,
        children,
    }
}

fn collect_map(a: &CanonNode, b: &CanonNode, out: &mut Vec<(CompId, CompId, Moebius)>) {
    out.push((a.comp, b.comp, b.chart.inverse().compose(&a.chart)));
    for (ka, kb) in a.children.iter().zip(&b.children) {
        collect_map(ka, kb, out);
    }
}

/// Decides whether two curves are isomorphic: a dual-tree isomorphism
/// matching `p_infty`, each marking index, and node structure, with a
/// per-component Möbius chart change carrying points and transforming the
/// field. Returns the per-component Möbius data on success.
///
/// Both curves are assumed to pass [`MarkedCurve::validate`].
pub fn curve_isomorphic(a: &MarkedCurve, b: &MarkedCurve) -> Option<Isomorphism> {
    if a.components.len() != b.components.len()
        || a.markings.len() != b.markings.len()
        || a.nodes.len() != b.nodes.len()
    {
        return None;
    }
    let ca = canon_node(a, a.p_infty.comp, &a.p_infty.at, None);
    let cb = canon_node(b, b.p_infty.comp, &b.p_infty.at, None);
    if ca.form != cb.form {
        return None;
    }
    let mut comp_map = Vec::new();
    collect_map(&ca, &cb, &mut comp_map);
    Some(Isomorphism { comp_map })
}

/// Canonical serialization of the whole curve (stable across isomorphic
/// inputs); exposed for deterministic output and hashing.
pub fn canonical_key(curve: &MarkedCurve) -> String {
    let node = canon_node(curve, curve.p_infty.comp, &curve.p_infty.at, None);
    format!("{:?}", node.form)
}
