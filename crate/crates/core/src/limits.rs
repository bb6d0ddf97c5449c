//! The stable-limit engine.
//!
//! Given marking paths in a dominant auxiliary parameter `s` and a
//! degeneration parameter `t` (the last, least dominant one), the cluster
//! recursion assembles the limit curve from lex-leading behavior. At a
//! cluster with center `c` and residuals `z_i`:
//!
//! * `e = val(1 + t·c)` (or `val(1)` in affine mode, `+∞` when `1 + t·c`
//!   vanishes identically) is the field scale: rescaling `x = λ·w + c`
//!   turns `(1+tx) ∂/∂x` into `((1+tc)/λ + t·w) ∂/∂w`, so the window at
//!   scale `λ = params^e` sees a finite nonzero translation field;
//! * `m = min_i val(z_i)` is the residual scale. When `m ≥ e` the cluster
//!   stays inside the field window: emit a leaf with markings at
//!   `coeff_e(z_i)/lc(1+tc)` (coincidences allowed). Otherwise the
//!   residuals spread wider than the field window: split by the leading
//!   coefficients `coeff_m(z_i)`, recentering silently when they all
//!   agree (this performs the contraction a degree-2 vertex would need).
//!
//! Outputs are translation-side objects: leaves carry `∂/∂w`, internal
//! vertices the zero field, all node weights vanish, and the coresidue
//! is 0.

use crate::curve::{ChartPoint, CompId, Component, CurvePoint, MarkedCurve, Node};
use crate::diagnostics::Diagnostics;
use crate::exactalg::rat::{rat, Rat};
use crate::exactalg::scalepath::ScalePath;
use crate::strata::{pn_closure_leq, pn_internal, LMType, PnType, PnVertex, StrataError};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum LimitError {
    #[error("path family is empty or mixes parameter tuples")]
    NonPolynomialInput,
    #[error("a marking path has zero denominator scale: {0}")]
    ZeroPath(String),
    #[error("marking path equals the field zero −1/t identically")]
    MarkingAtFieldZero,
    #[error("recursion budget exhausted")]
    DepthExceeded,
    #[error("curve is not a translation-side object:\n{0}")]
    NotAPnObject(Diagnostics),
    #[error("grid produced {got} valid samples, need at least {need}")]
    GridTooCoarse { got: usize, need: usize },
    #[error(transparent)]
    Strata(#[from] StrataError),
}

/// Family mode: `affine` families carry the translation field `∂/∂x` and
/// stay inside one translation-side fiber; `degeneration` families carry
/// `(1 + t·x) ∂/∂x` with `t` the last parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Degeneration,
}

/// Marking paths, one per marking, over a shared parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub mode: Mode,
    pub paths: Vec<ScalePath>,
}

impl PathFamily {
    pub fn new(mode: Mode, paths: Vec<ScalePath>) -> Result<Self, LimitError> {
        if paths.is_empty() || paths[0].params().is_empty() {
            return Err(LimitError::NonPolynomialInput);
        }
        let params = paths[0].params().to_vec();
        if paths.iter().any(|p| p.params() != params) {
            return Err(LimitError::NonPolynomialInput);
        }
        Ok(PathFamily { mode, paths })
    }
}

/// Center convention for the cluster recursion. The default accumulates
/// leading terms; the alternative jumps straight to the first marking
/// path of each cluster. Outputs agree up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterRule {
    Increment,
    FirstMarking,
}

struct LimitBuilder {
    mode: Mode,
    rule: CenterRule,
    components: Vec<Component>,
    nodes: Vec<Node>,
    markings: Vec<Option<CurvePoint>>,
    budget: usize,
}

/// `+∞`-aware lexicographic comparison: `None` is the top element.
fn val_opt(p: &ScalePath) -> Option<Vec<i64>> {
    p.val_lc().ok().map(|(v, _)| v)
}

fn lex_ge(a: &Option<Vec<i64>>, b: &Option<Vec<i64>>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

impl LimitBuilder {
    fn spend(&mut self) -> Result<(), LimitError> {
        if self.budget == 0 {
            return Err(LimitError::DepthExceeded);
        }
        self.budget -= 1;
        Ok(())
    }

    fn fresh(&mut self, field: [Rat; 3]) -> CompId {
        let id = self.components.len() as CompId;
        self.components.push(Component { id, field });
        id
    }

    /// `t·shift`, the field-scale increment of recentering by `shift`
    /// (zero increment in affine mode, where the scale is constantly 1).
    fn scale_shift(&self, shift: &ScalePath) -> Option<ScalePath> {
        match self.mode {
            Mode::Affine => None,
            Mode::Degeneration => {
                let mut t_exp = vec![0i64; shift.params().len()];
                *t_exp.last_mut().expect("nonempty params") = 1;
                Some(shift.mul_monomial(&t_exp).expect("matching rank"))
            }
        }
    }

    /// The cluster recursion. `scale` is the field scale `1 + t·center`
    /// (constantly 1 in affine mode), maintained incrementally: each
    /// recentering by `shift` adds `t·shift`.
    fn build(
        &mut self,
        mut scale: ScalePath,
        mut residuals: Vec<(usize, ScalePath)>,
    ) -> Result<CompId, LimitError> {
        loop {
            self.spend()?;
            if self.rule == CenterRule::FirstMarking {
                // recenter once on the cluster's first marking path
                let first = residuals[0].1.clone();
                if !first.is_zero() {
                    if let Some(ds) = self.scale_shift(&first) {
                        scale = &scale + &ds;
                    }
                    for (_, z) in &mut residuals {
                        *z = &*z - &first;
                    }
                }
            }

            let e = if scale.is_zero() {
                None
            } else {
                Some(scale.val_lc().expect("nonzero"))
            };
            let m = residuals
                .iter()
                .filter_map(|(_, z)| val_opt(z))
                .min();

            let is_leaf = match (&m, &e) {
                (None, None) => return Err(LimitError::MarkingAtFieldZero),
                (_, None) => false,
                (m, Some((ev, _))) => lex_ge(m, &Some(ev.clone())),
            };
            if is_leaf {
                let (ev, kappa) = e.expect("leaf needs a finite field scale");
                let comp = self.fresh([rat(1), rat(0), rat(0)]);
                for (idx, z) in &residuals {
                    let pos = z.coeff_at(&ev) / &kappa;
                    self.markings[*idx] = Some(CurvePoint::new(comp, ChartPoint::Finite(pos)));
                }
                return Ok(comp);
            }

            let mv = m.expect("split needs a finite residual scale");
            let mut groups: BTreeMap<Rat, Vec<(usize, ScalePath)>> = BTreeMap::new();
            for (idx, z) in residuals.drain(..) {
                groups.entry(z.coeff_at(&mv)).or_default().push((idx, z));
            }

            let params: Vec<&str> = scale.params().iter().map(|s| s.as_str()).collect();
            if groups.len() == 1 {
                // single cluster: absorb the common leading term and retry
                let (gamma, members) = groups.into_iter().next().expect("one group");
                debug_assert!(!gamma.is_zero(), "single cluster with zero leading value");
                let shift = ScalePath::monomial(&params, &mv, gamma).expect("rank matches");
                if let Some(ds) = self.scale_shift(&shift) {
                    scale = &scale + &ds;
                }
                residuals = members
                    .into_iter()
                    .map(|(idx, z)| (idx, &z - &shift))
                    .collect();
                continue;
            }

            let comp = self.fresh([rat(0), rat(0), rat(0)]);
            for (gamma, cluster) in groups {
                let shift =
                    ScalePath::monomial(&params, &mv, gamma.clone()).expect("rank matches");
                let child_scale = match self.scale_shift(&shift) {
                    Some(ds) => &scale + &ds,
                    None => scale.clone(),
                };
                let child_residuals: Vec<(usize, ScalePath)> = cluster
                    .into_iter()
                    .map(|(idx, z)| (idx, &z - &shift))
                    .collect();
                let child = self.build(child_scale, child_residuals)?;
                self.nodes.push(Node::new(
                    CurvePoint::new(comp, ChartPoint::Finite(gamma)),
                    CurvePoint::new(child, ChartPoint::Inf),
                ));
            }
            return Ok(comp);
        }
    }
}

/// Computes the `t → 0` stable limit of the family with the given center
/// rule. See the module docs for the recursion.
pub fn stable_limit_with(f: &PathFamily, rule: CenterRule) -> Result<MarkedCurve, LimitError> {
    if f.paths.is_empty() {
        return Err(LimitError::NonPolynomialInput);
    }
    let params = f.paths[0].params().to_vec();
    if f.paths.iter().any(|p| p.params() != params) {
        return Err(LimitError::NonPolynomialInput);
    }
    let pstr: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    let term_count: usize = f.paths.iter().map(|p| p.terms().count()).sum();
    let mut builder = LimitBuilder {
        mode: f.mode,
        rule,
        components: Vec::new(),
        nodes: Vec::new(),
        markings: vec![None; f.paths.len()],
        budget: 64 + 8 * (term_count + f.paths.len()),
    };
    let residuals: Vec<(usize, ScalePath)> =
        f.paths.iter().cloned().enumerate().collect();
    let root = builder.build(ScalePath::constant(&pstr, rat(1)), residuals)?;
    let markings = builder
        .markings
        .into_iter()
        .map(|m| m.expect("every marking placed"))
        .collect();
    Ok(MarkedCurve::new(
        builder.components,
        builder.nodes,
        CurvePoint::new(root, ChartPoint::Inf),
        markings,
    ))
}

/// The stable limit under the default center rule.
pub fn stable_limit(f: &PathFamily) -> Result<MarkedCurve, LimitError> {
    stable_limit_with(f, CenterRule::Increment)
}

/// Chain-side stratum type of a tuple of nonzero `y`-paths: blocks are
/// classes of equal dominant-parameter valuation, ordered by decreasing
/// valuation (nearest 0 first).
pub fn lm_type_of_path(y_paths: &[ScalePath]) -> Result<LMType, LimitError> {
    let mut by_val: BTreeMap<i64, BTreeSet<usize>> = BTreeMap::new();
    for (i, y) in y_paths.iter().enumerate() {
        let (val, _) = y
            .val_lc()
            .map_err(|_| LimitError::ZeroPath(format!("path {}", i + 1)))?;
        by_val.entry(val[0]).or_default().insert(i + 1);
    }
    let blocks: Vec<BTreeSet<usize>> = by_val.into_values().rev().collect();
    Ok(LMType::new(y_paths.len(), blocks)?)
}

/// Stratum type of a translation-side object: forgets chart data, keeps
/// the rooted tree with leaf marking sets.
pub fn type_of_curve(c: &MarkedCurve) -> Result<PnType, LimitError> {
    let d = c.pn_object_check();
    if !d.pass() {
        return Err(LimitError::NotAPnObject(d));
    }

    fn build(c: &MarkedCurve, comp: CompId, parent: Option<CompId>) -> PnVertex {
        let children: Vec<PnVertex> = c
            .nodes
            .iter()
            .filter_map(|n| n.other(comp))
            .filter(|p| Some(p.comp) != parent)
            .map(|p| build(c, p.comp, Some(comp)))
            .collect();
        if children.is_empty() {
            PnVertex::Leaf(c.markings_on(comp).iter().map(|(j, _)| j + 1).collect())
        } else {
            pn_internal(children)
        }
    }

    let tree = build(c, c.p_infty.comp, None);
    Ok(PnType::new(c.markings.len(), tree)?)
}

/// Sampling grid for [`specialize_lm`]: position coefficients and the
/// first/second-order `t`-perturbation coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleGrid {
    pub positions: Vec<Rat>,
    pub perturb_first: Vec<Rat>,
    pub perturb_second: Vec<Rat>,
    pub min_samples: usize,
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid {
            positions: [1, 2, 3, 5].map(rat).to_vec(),
            perturb_first: [0, 1, -1].map(rat).to_vec(),
            perturb_second: [0, 1, -1].map(rat).to_vec(),
            min_samples: 1,
        }
    }
}

impl SampleGrid {
    /// A thinner grid for quick looks; complete for the dimension-bounded
    /// cases only.
    pub fn coarse() -> Self {
        SampleGrid {
            positions: [1, 2].map(rat).to_vec(),
            perturb_first: [0, 1].map(rat).to_vec(),
            perturb_second: vec![rat(0)],
            min_samples: 1,
        }
    }
}

/// Outcome of sampling one chain-side stratum through the degeneration.
#[derive(Debug, Clone)]
pub struct SpecializeReport {
    pub collected: BTreeSet<PnType>,
    pub maximal: BTreeSet<PnType>,
    pub samples: usize,
}

/// Computes the maximal elements of `types` under the closure order.
pub fn maximal_types(types: &BTreeSet<PnType>) -> Result<BTreeSet<PnType>, LimitError> {
    let mut out = BTreeSet::new();
    for a in types {
        let mut is_max = true;
        for b in types {
            if a != b && pn_closure_leq(a, b)? {
                is_max = false;
                break;
            }
        }
        if is_max {
            out.insert(a.clone());
        }
    }
    Ok(out)
}

fn index_tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let total = base.checked_pow(len as u32).unwrap_or(0);
    (0..total)
        .map(|mut ix| {
            (0..len)
                .map(|_| {
                    let d = ix % base;
                    ix /= base;
                    d
                })
                .collect()
        })
        .collect()
}

/// Runs the grid samples for the given position tuples, returning the
/// collected types and the number of samples run.
fn run_samples(
    t: &LMType,
    grid: &SampleGrid,
    rank: &[i64],
    a_tuples: &[Vec<usize>],
) -> Result<(BTreeSet<PnType>, usize), LimitError> {
    let n = t.n();
    let mut collected = BTreeSet::new();
    let mut samples = 0usize;
    let one = ScalePath::constant(&["s", "t"], rat(1));
    for a_tuple in a_tuples {
        for b_tuple in index_tuples(n, grid.perturb_first.len()) {
            for c_tuple in index_tuples(n, grid.perturb_second.len()) {
                let mut ys = Vec::with_capacity(n);
                for i in 0..n {
                    let a = &grid.positions[a_tuple[i]];
                    let b = &grid.perturb_first[b_tuple[i]];
                    let cc = &grid.perturb_second[c_tuple[i]];
                    let y = ScalePath::new(
                        &["s", "t"],
                        &[
                            (&[rank[i], 0], a.clone()),
                            (&[rank[i], 1], a * b),
                            (&[rank[i], 2], a * cc),
                        ],
                    )
                    .expect("rank 2 tuple");
                    ys.push(y);
                }
                assert_eq!(&lm_type_of_path(&ys)?, t, "sample realizes the stratum");

                let xs: Vec<ScalePath> = ys
                    .iter()
                    .map(|y| (y - &one).mul_monomial(&[0, -1]).expect("rank 2"))
                    .collect();
                let family = PathFamily::new(Mode::Degeneration, xs)?;
                let curve = stable_limit(&family)?;
                collected.insert(type_of_curve(&curve)?);
                samples += 1;
            }
        }
    }
    Ok((collected, samples))
}

/// Samples the `t → 0` specialization of one chain-side stratum.
///
/// Generates `y_i(s,t) = a_i·s^{rank}·(1 + b_i·t + c_i·t²)` over the grid
/// (rank = distance of marking `i`'s block from the ∞-end), checks each
/// sample realizes the requested stratum, converts by `x_i = (y_i − 1)/t`,
/// runs the limit in degeneration mode, and collects stratum types
/// together with their maximal elements under the closure order.
pub fn specialize_lm(t: &LMType, grid: &SampleGrid) -> Result<SpecializeReport, LimitError> {
    specialize_lm_jobs(t, grid, 1)
}

/// [`specialize_lm`] with the position tuples split over a worker pool;
/// results are merged as sorted sets, so the report does not depend on
/// the thread count.
pub fn specialize_lm_jobs(
    t: &LMType,
    grid: &SampleGrid,
    jobs: usize,
) -> Result<SpecializeReport, LimitError> {
    let n = t.n();
    let k = t.blocks().len();
    let mut rank = vec![0i64; n];
    for (j, block) in t.blocks().iter().enumerate() {
        for &i in block {
            rank[i - 1] = (k - j) as i64;
        }
    }
    let a_tuples = index_tuples(n, grid.positions.len());

    let (collected, samples) = if jobs <= 1 || a_tuples.len() < 2 {
        run_samples(t, grid, &rank, &a_tuples)?
    } else {
        let jobs = jobs.min(a_tuples.len());
        let chunk = a_tuples.len().div_ceil(jobs);
        let results: Vec<Result<(BTreeSet<PnType>, usize), LimitError>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = a_tuples
                    .chunks(chunk)
                    .map(|block| {
                        let rank = &rank;
                        scope.spawn(move || run_samples(t, grid, rank, block))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("worker panicked"))
                    .collect()
            });
        let mut collected = BTreeSet::new();
        let mut samples = 0usize;
        for r in results {
            let (set, count) = r?;
            collected.extend(set);
            samples += count;
        }
        (collected, samples)
    };

    if samples < grid.min_samples {
        return Err(LimitError::GridTooCoarse {
            got: samples,
            need: grid.min_samples,
        });
    }
    let maximal = maximal_types(&collected)?;
    Ok(SpecializeReport {
        collected,
        maximal,
        samples,
    })
}
