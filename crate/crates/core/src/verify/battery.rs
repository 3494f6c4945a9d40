//! Runs every structural property against brute force on one instance.
//!
//! Each check either passes with a short summary or fails with a
//! counterexample. Internal errors count as failures.

use std::collections::HashSet;
use std::fmt::Write as _;

use num::{BigRational, Zero};
use rand::Rng;
use serde::Serialize;

use super::brute::{
    brute_decmin_set, brute_incmax_set, brute_min_ga, brute_min_square_sum, brute_sqsum_min_set,
    brute_tightening_step, has_tight_top_chain, satisfies_basis_exchange,
};
use super::duality::{
    check_minmax_duality, default_scan_bound, lovasz_from_table, DualityReport, DUALITY_MAX_N,
};
use super::enumerate::{
    brute_is_member, enumerate_members, finite_table, EnumeratedSet, DEFAULT_CAP,
};
use super::generate::rng_from_seed;
use super::hull::in_convex_hull;
use crate::decomp::{
    big_g_a, fujishige_decmin, groenevelt_decmin, minimize_ga, DecompTrace, DominatorOrder,
    FujishigeOptions, GroeneveltOptions, TieRule, TraceNode,
};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partitions::canonical::{
    canonical_partition_direct_with, canonical_partition_iterative_with,
};
use crate::partitions::principal::principal_partition_with;
use crate::partitions::{
    canonical_from_decmin, canonical_from_principal, canonical_partition_direct,
    canonical_partition_iterative, certify_decmin, min_norm_from_principal, principal_partition,
    CanonicalChain, Certification, DinkelbachRatio, PrincipalChain,
};
use crate::relaxation::{continuous_relaxation_decmin, cost_of, decmin_structure, min_cost_decmin};
use crate::setfn::vector::{floor_div, rat, rat_int, w_bar};
use crate::setfn::{IntVec, RatVec, Subset, SupermodularOracle};

/// Above this many points the membership check uses member neighborhoods instead of the whole box.
const FULL_BOX_LIMIT: u128 = 4096;
const SAMPLED_PERMUTATIONS: usize = 200;
const HULL_MAX_N: usize = 5;
const HULL_MAX_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub label: String,
    pub n: usize,
    pub members: usize,
    pub decmin: Vec<IntVec>,
    pub min_square_sum: i128,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityReport>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "instance {} (n={}, {} members, {} dec-min, min W={})\n",
            self.label,
            self.n,
            self.members,
            self.decmin.len(),
            self.min_square_sum
        );
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BatteryOptions {
    pub cap: u128,
    /// Runs the min-max scan when `n ≤ DUALITY_MAX_N`.
    pub duality: bool,
    pub scan_bound: Option<i64>,
    /// Seeds the sampled parts (cost vectors, permutations above n = 6, test vectors).
    pub seed: u64,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions {
            cap: DEFAULT_CAP,
            duality: true,
            scan_bound: None,
            seed: 0,
        }
    }
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(format!("error: {e}"))
    }
}

type Check = std::result::Result<String, Fail>;
type NamedCheck = (&'static str, fn(&Ctx) -> Check);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(Fail(format!($($arg)*)));
        }
    };
}

struct Ctx<'a> {
    p: &'a SupermodularOracle,
    n: usize,
    table: Vec<Option<i128>>,
    e: EnumeratedSet,
    member_set: HashSet<IntVec>,
    decmin: Vec<IntVec>,
    decmin_set: HashSet<IntVec>,
    min_w: i128,
    principal: std::result::Result<(PrincipalChain, RatVec), String>,
    opts: &'a BatteryOptions,
}

impl Ctx<'_> {
    fn principal(&self) -> std::result::Result<(&PrincipalChain, &RatVec), Fail> {
        match &self.principal {
            Ok((pp, mr)) => Ok((pp, mr)),
            Err(e) => Err(Fail(format!("principal partition failed: {e}"))),
        }
    }
}

/// Enumerates the instance and runs every check. Fails only when the
/// M-convex set cannot be enumerated.
pub fn run_theorem_battery(
    p: &SupermodularOracle,
    label: &str,
    opts: &BatteryOptions,
) -> Result<BatteryReport> {
    let e = enumerate_members(p, opts.cap)?;
    if e.members.is_empty() {
        return Err(Error::Invalid("the M-convex set is empty".into()));
    }
    let decmin = brute_decmin_set(&e.members);
    let min_w = brute_min_square_sum(&e.members).expect("nonempty");
    let principal = principal_partition(p)
        .map(|pp| {
            let mr = min_norm_from_principal(p.n(), &pp);
            (pp, mr)
        })
        .map_err(|e| e.to_string());
    let ctx = Ctx {
        p,
        n: p.n(),
        table: finite_table(p),
        member_set: e.members.iter().cloned().collect(),
        decmin_set: decmin.iter().cloned().collect(),
        decmin: decmin.clone(),
        e,
        min_w,
        principal,
        opts,
    };

    let checks: [NamedCheck; 21] = [
        ("supermodularity", check_supermodularity),
        ("greedy-vertices", check_greedy_vertices),
        ("membership", check_membership),
        ("exchange", check_exchange),
        ("sfm-lattice", check_sfm_lattice),
        ("lovasz-extension", check_lovasz),
        ("optimal-sets-agree", check_optimal_sets),
        ("tightening-characterization", check_tightening),
        ("canonical-four-ways", check_canonical),
        ("essential-critical-values", check_value_relations),
        ("min-norm-point", check_min_norm),
        ("proximity-box", check_proximity),
        ("convex-hull", check_hull),
        ("piecewise-linear-minimum", check_wbar),
        ("relaxation", check_relaxation),
        ("structure-bases", check_structure),
        ("algorithms-decmin", check_algorithms),
        ("groenevelt-trace", check_groenevelt_traces),
        ("fujishige-trace", check_fujishige_trace),
        ("ga-local-global", check_ga),
        ("min-cost", check_min_cost),
    ];
    let mut results: Vec<CheckResult> = checks
        .iter()
        .map(|&(name, f)| {
            let (passed, detail) = match f(&ctx) {
                Ok(detail) => (true, detail),
                Err(Fail(detail)) => (false, detail),
            };
            CheckResult {
                name,
                passed,
                detail,
            }
        })
        .collect();

    let mut duality = None;
    if opts.duality && ctx.n <= DUALITY_MAX_N {
        let (passed, detail) = match check_duality(&ctx) {
            Ok(report) => {
                let detail = format!(
                    "weak duality over {} potentials within ±{}; equality {}; continuous identity {}",
                    report.scanned,
                    report.scan_bound,
                    if report.equality_attained { "attained" } else { "not attained" },
                    if report.continuous_equal { "holds" } else { "differs" },
                );
                let passed = report.weak_duality_holds();
                let detail = match &report.weak_violation {
                    Some(pi) => format!("dual value above min W at π={pi:?}"),
                    None => detail,
                };
                duality = Some(report);
                (passed, detail)
            }
            Err(Fail(d)) => (false, d),
        };
        results.push(CheckResult {
            name: "minmax-duality",
            passed,
            detail,
        });
    }

    Ok(BatteryReport {
        label: label.to_owned(),
        n: ctx.n,
        members: ctx.e.members.len(),
        decmin,
        min_square_sum: min_w,
        checks: results,
        duality,
    })
}

/// Validates and runs the battery on each instance, spreading the work over threads.
pub fn run_batch(
    instances: &[(String, Instance)],
    opts: &BatteryOptions,
) -> Vec<Result<BatteryReport>> {
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(instances.len().max(1));
    let mut out: Vec<Option<Result<BatteryReport>>> = vec![None; instances.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = out
            .chunks_mut(instances.len().div_ceil(threads).max(1))
            .collect();
        let mut start = 0;
        for chunk in chunks {
            let slice = &instances[start..start + chunk.len()];
            start += chunk.len();
            scope.spawn(move || {
                for (slot, (label, inst)) in chunk.iter_mut().zip(slice) {
                    *slot = Some(
                        inst.validate()
                            .and_then(|(p, _)| run_theorem_battery(&p, label, opts)),
                    );
                }
            });
        }
    });
    out.into_iter()
        .map(|r| r.expect("every slot is filled"))
        .collect()
}

fn check_supermodularity(c: &Ctx) -> Check {
    c.p.check_supermodular(0)?;
    let full = c.p.full();
    let b = |x: Subset| c.p.complement_b(x);
    let mut pairs = 0u64;
    for x in full.subsets() {
        for y in full.subsets() {
            let (bx, by) = (b(x), b(y));
            if !(bx.is_finite() && by.is_finite()) {
                continue;
            }
            ensure!(
                bx + by >= b(x.union(y)) + b(x.intersection(y)),
                "complement is not submodular at X={x:?}, Y={y:?}"
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "p supermodular, complement submodular on {pairs} pairs"
    ))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_greedy_vertices(c: &Ctx) -> Check {
    let mut orders = Vec::new();
    if c.n <= 6 {
        let mut perm: Vec<usize> = (0..c.n).collect();
        loop {
            orders.push(perm.clone());
            if !next_permutation(&mut perm) {
                break;
            }
        }
    } else {
        use rand::seq::SliceRandom;
        let mut rng = rng_from_seed(c.opts.seed);
        for _ in 0..SAMPLED_PERMUTATIONS {
            let mut perm: Vec<usize> = (0..c.n).collect();
            perm.shuffle(&mut rng);
            orders.push(perm);
        }
    }
    let mut skipped = 0;
    for order in &orders {
        let v = match c.p.greedy_vertex(order) {
            Ok(v) => v,
            Err(Error::InfinitePrefix(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        ensure!(
            c.p.is_member(&v)? && c.e.contains(&v),
            "greedy vertex {v:?} for order {order:?} is not a member"
        );
    }
    Ok(format!(
        "{} orders, {skipped} with an infinite prefix",
        orders.len()
    ))
}

fn check_membership(c: &Ctx) -> Check {
    let volume: u128 =
        c.e.bounds
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1) as u128)
            .product();
    let mut points: Vec<IntVec> = Vec::new();
    if volume <= FULL_BOX_LIMIT {
        let mut x: Vec<i64> = c.e.bounds.iter().map(|b| b.0).collect();
        loop {
            points.push(IntVec(x.clone()));
            let mut i = 0;
            while i < c.n && x[i] == c.e.bounds[i].1 {
                x[i] = c.e.bounds[i].0;
                i += 1;
            }
            if i == c.n {
                break;
            }
            x[i] += 1;
        }
    } else {
        for m in &c.e.members {
            points.push(m.clone());
            for s in 0..c.n {
                let mut up = m.clone();
                up[s] += 1;
                points.push(up);
                for t in (0..c.n).filter(|&t| t != s) {
                    points.push(m.moved(s, t));
                }
            }
        }
    }
    for x in &points {
        let fast = c.p.is_member(x)?;
        let brute = brute_is_member(&c.table, x);
        let listed = c.e.contains(x);
        ensure!(
            fast == brute && brute == listed,
            "membership of {x:?}: oracle {fast}, brute {brute}, enumerated {listed}"
        );
    }
    let how = if volume <= FULL_BOX_LIMIT {
        "whole bounds box"
    } else {
        "member neighborhoods"
    };
    Ok(format!("{} points ({how})", points.len()))
}

fn brute_smallest_tight_containing(c: &Ctx, m: &IntVec, t: usize) -> Option<Subset> {
    c.p.full()
        .subsets()
        .filter(|x| x.contains(t) && c.table[x.bits() as usize] == Some(m.sum_over(*x)))
        .reduce(Subset::intersection)
}

fn check_exchange(c: &Ctx) -> Check {
    let mut pairs = 0u64;
    for m in &c.e.members {
        for s in 0..c.n {
            for t in (0..c.n).filter(|&t| t != s) {
                let fast = c.p.exchange_feasible(m, s, t)?;
                let brute = c.member_set.contains(&m.moved(s, t));
                ensure!(
                    fast == brute,
                    "exchange (+{s}, -{t}) at {m:?}: oracle {fast}, brute {brute}"
                );
                pairs += 1;
            }
        }
        for t in 0..c.n {
            let dep = c.p.dependence_set(m, t)?;
            let brute = brute_smallest_tight_containing(c, m, t);
            ensure!(
                Some(dep) == brute,
                "dependence set of {t} at {m:?}: {dep:?} vs brute {brute:?}"
            );
        }
    }
    Ok(format!("{pairs} exchanges and all dependence sets"))
}

fn check_sfm_lattice(c: &Ctx) -> Check {
    let full = c.p.full();
    let mut vectors: Vec<IntVec> =
        c.e.members
            .iter()
            .step_by((c.e.members.len() / 8).max(1))
            .cloned()
            .collect();
    let shifted: Vec<IntVec> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w[i % c.n] += 1;
            w[(i + 1) % c.n] -= 2;
            w
        })
        .collect();
    vectors.extend(shifted);
    let mut problems = 0;
    for x in &vectors {
        for lo in std::iter::once(Subset::EMPTY).chain((0..c.n).map(Subset::singleton)) {
            let r = c.p.min_slack(x, lo, full)?;
            let f = |y: Subset| crate::setfn::Ext::Finite(x.sum_over(y)) - c.p.eval(y);
            let feasible: Vec<Subset> = full.subsets().filter(|y| lo.is_subset_of(*y)).collect();
            let best = feasible.iter().map(|&y| f(y)).min().expect("nonempty");
            ensure!(
                r.min_value == best,
                "min of slack of {x:?} above {lo:?}: {:?} vs {best:?}",
                r.min_value
            );
            ensure!(
                f(r.smallest) == best && f(r.largest) == best,
                "reported extreme minimizers of slack of {x:?} are not minimizers"
            );
            for y in feasible.iter().filter(|&&y| f(y) == best) {
                ensure!(
                    r.smallest.is_subset_of(*y) && y.is_subset_of(r.largest),
                    "minimizer {y:?} of slack of {x:?} lies outside [{:?}, {:?}]",
                    r.smallest,
                    r.largest
                );
            }
            problems += 1;
        }
    }
    Ok(format!("{problems} minimization problems"))
}

fn check_lovasz(c: &Ctx) -> Check {
    let mut rng = rng_from_seed(c.opts.seed ^ 0x4C4F_5641);
    let p_s = rat_int(c.p.p_full());
    let mut samples = 0;
    for _ in 0..24 {
        let pi: Vec<i64> = (0..c.n).map(|_| rng.gen_range(-5..=5)).collect();
        let Some(brute) = lovasz_from_table(&c.table, &pi) else {
            continue;
        };
        let exact = c.p.lovasz_extension_int(&pi)?;
        ensure!(
            exact == brute,
            "linear extension at {pi:?}: {exact} vs table formula {brute}"
        );
        let base = RatVec(pi.iter().map(|&k| rat(k, 1)).collect());
        let value = c.p.lovasz_extension(&base)?;
        ensure!(
            value == rat_int(exact),
            "rational and integer extensions differ at {pi:?}"
        );
        for kappa in [rat(1, 2), rat(2, 1), rat(3, 7)] {
            let scaled = RatVec(base.iter().map(|q| q * &kappa).collect());
            ensure!(
                c.p.lovasz_extension(&scaled)? == &value * &kappa,
                "not positively homogeneous at {pi:?} with factor {kappa}"
            );
            let shifted = RatVec(base.iter().map(|q| q + &kappa).collect());
            ensure!(
                c.p.lovasz_extension(&shifted)? == &value + &kappa * &p_s,
                "shift by {kappa}·1 at {pi:?} does not add {kappa}·p(S)"
            );
        }
        samples += 1;
    }
    Ok(format!("{samples} potentials"))
}

fn check_optimal_sets(c: &Ctx) -> Check {
    let inc = brute_incmax_set(&c.e.members);
    let sq = brute_sqsum_min_set(&c.e.members);
    ensure!(
        inc == c.decmin,
        "inc-max set {inc:?} differs from dec-min set {:?}",
        c.decmin
    );
    ensure!(
        sq == c.decmin,
        "square-sum minimizers {sq:?} differ from dec-min set {:?}",
        c.decmin
    );
    Ok(format!("{} elements", c.decmin.len()))
}

fn check_tightening(c: &Ctx) -> Check {
    let mut certified = 0;
    for m in &c.e.members {
        let in_set = c.decmin_set.contains(m);
        let no_step = brute_tightening_step(&c.member_set, m).is_none();
        let chain = has_tight_top_chain(&c.table, m);
        let cert = certify_decmin(c.p, m)?;
        match &cert {
            Certification::Certified(cert) => {
                cert.check(c.p)?;
                ensure!(&cert.witness == m, "certificate witness differs from {m:?}");
                certified += 1;
            }
            Certification::Tightening { s, t } => {
                ensure!(
                    m[*t] >= m[*s] + 2 && c.member_set.contains(&m.moved(*s, *t)),
                    "reported step (+{s}, -{t}) at {m:?} is not a 1-tightening step"
                );
            }
        }
        let algo = matches!(cert, Certification::Certified(_));
        ensure!(
            in_set == no_step && no_step == chain && chain == algo,
            "{m:?}: dec-min {in_set}, no brute step {no_step}, tight-top chain {chain}, certified {algo}"
        );
    }
    Ok(format!(
        "{} members, {certified} certified",
        c.e.members.len()
    ))
}

fn check_canonical(c: &Ctx) -> Check {
    let (pp, _) = c.principal()?;
    let reference = canonical_partition_iterative(c.p)?;
    reference.validate(c.p.full())?;
    let mut ways: Vec<(String, CanonicalChain)> = vec![
        ("direct".into(), canonical_partition_direct(c.p)?),
        ("from principal".into(), canonical_from_principal(pp)?),
        (
            "iterative (dinkelbach)".into(),
            canonical_partition_iterative_with(c.p, &DinkelbachRatio)?,
        ),
        (
            "direct (dinkelbach)".into(),
            canonical_partition_direct_with(c.p, &DinkelbachRatio)?,
        ),
        (
            "from principal (dinkelbach)".into(),
            canonical_from_principal(&principal_partition_with(c.p, &DinkelbachRatio)?)?,
        ),
    ];
    for m in &c.decmin {
        ways.push((format!("from {m:?}"), canonical_from_decmin(c.p, m)?));
    }
    for (how, chain) in &ways {
        ensure!(
            chain == &reference,
            "{how}: {:?} / {:?} differs from iterative {:?} / {:?}",
            chain.chain,
            chain.values,
            reference.chain,
            reference.values
        );
    }
    Ok(format!(
        "beta={:?}, {} constructions agree",
        reference.values,
        ways.len() + 1
    ))
}

fn check_value_relations(c: &Ctx) -> Check {
    let (pp, _) = c.principal()?;
    let canonical = canonical_partition_iterative(c.p)?;
    pp.validate(c.p.full())?;
    ensure!(
        canonical.values.windows(2).all(|w| w[0] > w[1]),
        "essential values {:?} do not strictly decrease",
        canonical.values
    );
    ensure!(
        pp.values.windows(2).all(|w| w[0] > w[1]),
        "critical values do not strictly decrease"
    );
    for &beta in &canonical.values {
        let hi = rat(beta, 1);
        let lo = rat(beta - 1, 1);
        ensure!(
            pp.values.iter().any(|l| *l <= hi && *l > lo),
            "no critical value in ({}, {beta}]",
            beta - 1
        );
    }
    for member in &canonical.chain {
        ensure!(
            pp.chain.contains(member),
            "canonical member {member:?} is not in the principal chain"
        );
    }
    Ok(format!(
        "{} critical, {} essential values",
        pp.len(),
        canonical.len()
    ))
}

fn check_min_norm(c: &Ctx) -> Check {
    let (pp, mr) = c.principal()?;
    ensure!(
        c.p.contains_rational(mr)?,
        "min-norm point {mr:?} is not in B"
    );
    for block in pp.blocks() {
        let first = block.iter().next().expect("blocks are nonempty");
        ensure!(
            block.iter().all(|s| mr[s] == mr[first]),
            "not uniform on block {block:?}"
        );
    }
    let values = mr.distinct_values_desc();
    for v in &values {
        let level: Subset = (0..c.n).filter(|&s| mr[s] >= *v).collect();
        let tight = c.p.eval(level).finite().map(rat_int);
        ensure!(
            tight == Some(mr.sum_over(level)),
            "level set {level:?} is not tight"
        );
    }
    ensure!(
        values == pp.values,
        "distinct values of the min-norm point differ from the critical values"
    );
    ensure!(
        mr.square_sum() <= rat_int(c.min_w),
        "square-sum of the min-norm point exceeds the integer minimum"
    );
    Ok(format!("{mr:?}"))
}

fn check_proximity(c: &Ctx) -> Check {
    let (_, mr) = c.principal()?;
    let (lo, hi) = (mr.floor()?, mr.ceil()?);
    for m in &c.decmin {
        ensure!(
            (0..c.n).all(|s| lo[s] <= m[s] && m[s] <= hi[s]),
            "dec-min {m:?} is outside [{lo:?}, {hi:?}]"
        );
    }
    Ok(format!("box [{lo:?}, {hi:?}]"))
}

fn check_hull(c: &Ctx) -> Check {
    let (_, mr) = c.principal()?;
    if c.n > HULL_MAX_N || c.decmin.len() > HULL_MAX_POINTS {
        return Ok(format!(
            "skipped (n={}, {} dec-min elements; limits {HULL_MAX_N} and {HULL_MAX_POINTS})",
            c.n,
            c.decmin.len()
        ));
    }
    ensure!(
        in_convex_hull(mr, &c.decmin),
        "min-norm point {mr:?} is outside the hull of {:?}",
        c.decmin
    );
    Ok(format!("hull of {} points", c.decmin.len()))
}

fn check_wbar(c: &Ctx) -> Check {
    let (_, mr) = c.principal()?;
    let value = w_bar(mr);
    ensure!(
        value == rat_int(c.min_w),
        "piecewise-linear value {value} differs from min W {}",
        c.min_w
    );
    Ok(format!("{}", c.min_w))
}

/// Minimizers of the piecewise-linear objective: the min-norm point,
/// midpoints of dec-min pairs and the dec-min centroid.
fn wbar_minimizers(c: &Ctx, mr: &RatVec) -> Vec<RatVec> {
    let mut out = vec![mr.clone()];
    let k = c.decmin.len();
    for i in 0..k.min(5) {
        for j in i + 1..k.min(5) {
            out.push(RatVec(
                (0..c.n)
                    .map(|s| rat(c.decmin[i][s] + c.decmin[j][s], 2))
                    .collect(),
            ));
        }
    }
    let count = k as i64;
    out.push(RatVec(
        (0..c.n)
            .map(|s| rat(c.decmin.iter().map(|m| m[s]).sum(), count))
            .collect(),
    ));
    out
}

fn check_relaxation(c: &Ctx) -> Check {
    let (_, mr) = c.principal()?;
    let candidates = wbar_minimizers(c, mr);
    for x in &candidates {
        ensure!(
            w_bar(x) == rat_int(c.min_w),
            "{x:?} does not minimize the piecewise-linear objective"
        );
        let (lo, hi) = (x.floor()?, x.ceil()?);
        ensure!(
            c.decmin
                .iter()
                .any(|m| (0..c.n).all(|s| lo[s] <= m[s] && m[s] <= hi[s])),
            "no dec-min element in the box of {x:?}"
        );
        let r = continuous_relaxation_decmin(c.p, x)?;
        ensure!(
            c.decmin_set.contains(&r.z),
            "rounding of {x:?} gives {:?}, not dec-min",
            r.z
        );
    }
    Ok(format!("{} fractional minimizers", candidates.len()))
}

fn check_structure(c: &Ctx) -> Check {
    let st = decmin_structure(c.p)?;
    let mut elements = st.decmin_elements()?;
    elements.sort();
    ensure!(
        elements == c.decmin,
        "structure yields {elements:?}, brute force {:?}",
        c.decmin
    );
    let bases = st.bases()?;
    for m in &c.decmin {
        let support: Subset = (0..c.n).filter(|&s| m[s] - st.delta[s] == 1).collect();
        ensure!(
            (0..c.n).all(|s| (0..=1).contains(&(m[s] - st.delta[s]))) && bases.contains(&support),
            "{m:?} minus the base vector {:?} is not a basis indicator",
            st.delta
        );
    }
    ensure!(
        satisfies_basis_exchange(&bases),
        "basis family violates the exchange axiom"
    );
    Ok(format!("{} bases of rank {}", bases.len(), st.rank()))
}

fn groenevelt_variants() -> Vec<GroeneveltOptions> {
    let mut out = Vec::new();
    for tie in [TieRule::Lowest, TieRule::Highest] {
        for dominator_order in [DominatorOrder::Index, DominatorOrder::Reverse] {
            out.push(GroeneveltOptions {
                root_start: None,
                tie,
                dominator_order,
            });
        }
    }
    out
}

fn check_algorithms(c: &Ctx) -> Check {
    let (_, mr) = c.principal()?;
    let mut outputs: Vec<(String, IntVec)> = Vec::new();
    for opts in groenevelt_variants() {
        let label = format!("groenevelt {:?}/{:?}", opts.tie, opts.dominator_order);
        outputs.push((label, groenevelt_decmin(c.p, &opts)?.z));
    }
    outputs.push((
        "fujishige".into(),
        fujishige_decmin(c.p, &FujishigeOptions::default())?.z,
    ));
    outputs.push((
        "relaxation".into(),
        continuous_relaxation_decmin(c.p, mr)?.z,
    ));
    let zero = vec![BigRational::zero(); c.n];
    outputs.push(("structure".into(), min_cost_decmin(c.p, &zero)?.0));
    for (alg, z) in &outputs {
        ensure!(
            c.decmin_set.contains(z),
            "{alg} returned {z:?}, not dec-min"
        );
        ensure!(
            z.square_sum() == c.min_w,
            "{alg} square-sum {} vs {}",
            z.square_sum(),
            c.min_w
        );
        ensure!(
            matches!(certify_decmin(c.p, z)?, Certification::Certified(_)),
            "{alg} output {z:?} is not certified"
        );
    }
    Ok(format!("{} runs", outputs.len()))
}

/// The node's function `X ↦ p(X ∪ base) − p(base)` on its own elements.
fn node_oracle(p: &SupermodularOracle, node: &TraceNode) -> Result<SupermodularOracle> {
    let elements = node.element_set();
    if elements == p.full() && node.base.is_empty() {
        return Ok(p.clone());
    }
    p.minor(elements.union(node.base), node.base)
}

fn local(node: &TraceNode, set: Subset) -> Subset {
    node.elements
        .iter()
        .enumerate()
        .filter(|(_, s)| set.contains(**s))
        .map(|(i, _)| i)
        .collect()
}

fn check_parts(c: &Ctx, trace: &DecompTrace) -> std::result::Result<(), Fail> {
    let parts = trace.root.final_parts();
    let mut seen = Subset::EMPTY;
    for part in &parts {
        ensure!(
            part.intersection(seen).is_empty(),
            "final parts overlap at {part:?}"
        );
        seen = seen.union(*part);
    }
    ensure!(
        seen == c.p.full(),
        "final parts {parts:?} do not cover the ground set"
    );
    Ok(())
}

fn check_groenevelt_traces(c: &Ctx) -> Check {
    let mut nodes = 0;
    for opts in groenevelt_variants() {
        let res = groenevelt_decmin(c.p, &opts)?;
        check_parts(c, &res.trace)?;
        for node in res.trace.root.nodes() {
            nodes += 1;
            let q = node_oracle(c.p, node)?;
            ensure!(
                q.is_member(&node.output)?,
                "node {:?} output is not a member",
                node.elements
            );
            let Some(y) = &node.y else {
                ensure!(
                    node.is_leaf(),
                    "node {:?} split without a dominator",
                    node.elements
                );
                continue;
            };
            let s_plus = local(node, node.s_plus);
            ensure!(
                !s_plus.is_empty() && s_plus != q.full(),
                "trivial split at node {:?}",
                node.elements
            );
            ensure!(
                q.largest_tight(y)? == s_plus,
                "split at node {:?} is not the largest tight set of y",
                node.elements
            );
            for s in 0..q.n() {
                ensure!(y[s] >= node.x[s], "y below x at node {:?}", node.elements);
                ensure!(
                    s_plus.contains(s) || y[s] == node.x[s],
                    "y differs from x outside the tight set at node {:?}",
                    node.elements
                );
                if y[s] > node.x[s] {
                    let mut lower = y.clone();
                    lower[s] -= 1;
                    ensure!(
                        q.largest_tight(&lower).is_err(),
                        "y is not minimal at node {:?}",
                        node.elements
                    );
                }
            }
        }
    }
    Ok(format!(
        "{nodes} nodes over {} variants",
        groenevelt_variants().len()
    ))
}

fn check_fujishige_trace(c: &Ctx) -> Check {
    let res = fujishige_decmin(c.p, &FujishigeOptions::default())?;
    check_parts(c, &res.trace)?;
    let z = &res.z;
    let nodes = res.trace.root.nodes();
    for node in &nodes {
        let a = node.a;
        for s in node.s_plus.iter() {
            ensure!(
                z[s] > a,
                "final value {} at {s} in S+ is not above a={a}",
                z[s]
            );
        }
        for s in node.s_minus.iter() {
            ensure!(z[s] <= a, "final value {} at {s} in S- exceeds a={a}", z[s]);
        }
        for s in node.s_zero.iter() {
            ensure!(
                z[s] == a || z[s] == a + 1,
                "final value {} at {s} in S0 is not in {{a, a+1}}",
                z[s]
            );
        }
        let elements = node.element_set();
        let p_base =
            c.p.eval(node.base)
                .finite()
                .ok_or(Error::InfiniteContractionBase)?;
        for (what, set) in [
            ("S+", node.s_plus),
            ("S-S-", elements.difference(node.s_minus)),
        ] {
            let tight = c.p.eval(set.union(node.base)).finite().map(|v| v - p_base)
                == Some(z.sum_over(set));
            ensure!(
                tight,
                "{what}={set:?} is not tight at node {:?}",
                node.elements
            );
            let inside = set.iter().map(|s| z[s]).min();
            let outside = elements.difference(set).iter().map(|s| z[s]).max();
            if let (Some(i), Some(o)) = (inside, outside) {
                ensure!(
                    i >= o,
                    "{what}={set:?} is not top at node {:?}",
                    node.elements
                );
            }
        }
    }
    Ok(format!(
        "{} nodes, depth {}",
        nodes.len(),
        res.trace.root.depth()
    ))
}

fn check_ga(c: &Ctx) -> Check {
    let a0 = floor_div(c.p.p_full(), c.n as i128) as i64;
    let members = &c.e.members;
    let mut starts = vec![c.p.identity_greedy_vertex()?];
    starts.extend(
        [
            &members[0],
            &members[members.len() / 2],
            &members[members.len() - 1],
        ]
        .map(IntVec::clone),
    );
    let mut runs = 0;
    for a in [a0 - 1, a0, a0 + 1] {
        let best = brute_min_ga(members, a).expect("nonempty");
        for start in &starts {
            let (z, _) = minimize_ga(c.p, a, start)?;
            ensure!(
                c.member_set.contains(&z),
                "local search left the set at {z:?}"
            );
            ensure!(
                big_g_a(a, &z) == best,
                "local minimum {} from {start:?} with a={a} vs global {best}",
                big_g_a(a, &z)
            );
            runs += 1;
        }
    }
    Ok(format!("{runs} local searches"))
}

fn check_min_cost(c: &Ctx) -> Check {
    let mut rng = rng_from_seed(c.opts.seed ^ 0x434F_5354);
    let mut costs: Vec<Vec<BigRational>> = (0..4)
        .map(|_| (0..c.n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect())
        .collect();
    costs.push((0..c.n).map(|_| rat(rng.gen_range(-7..=7), 2)).collect());
    for cost in &costs {
        let (m, value) = min_cost_decmin(c.p, cost)?;
        ensure!(
            c.decmin_set.contains(&m),
            "min-cost output {m:?} is not dec-min"
        );
        ensure!(
            cost_of(cost, &m) == value,
            "reported cost {value} does not match {m:?}"
        );
        let best = c
            .decmin
            .iter()
            .map(|d| cost_of(cost, d))
            .min()
            .expect("nonempty");
        ensure!(
            value == best,
            "cost {value} is above the dec-min optimum {best}"
        );
    }
    Ok(format!("{} cost vectors", costs.len()))
}

fn check_duality(c: &Ctx) -> std::result::Result<DualityReport, Fail> {
    let (_, mr) = c.principal()?;
    let bound = c
        .opts
        .scan_bound
        .unwrap_or_else(|| default_scan_bound(&c.e.bounds));
    Ok(check_minmax_duality(c.p, &c.e.members, mr, bound)?)
}
