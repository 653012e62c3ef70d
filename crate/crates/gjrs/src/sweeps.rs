//! Exhaustive verification over finite parameter grids.
//!
//! Three sweeps, each over every block (or block pair / product) drawn from
//! a declared [`GridSpec`]:
//!
//! - [`verify_pat1`]: whenever both standard factors have a pole at
//!   s = 1/2, the Rankin-Selberg factor of the pair has a pole at s = 1.
//! - [`verify_generic`]: an irreducible product of essentially
//!   square-integrable blocks never has poles at s = 1/2 on both the
//!   sigma and the dual side.
//! - [`verify_tempered_rs`]: Rankin-Selberg factors of unitary tempered
//!   pairs have no pole at any positive rational point (denominator ≤ 4,
//!   up to 5).
//!
//! Counterexamples are recorded exhaustively, never first-failure, so a
//! corrupted rule reports its full blast radius. The [`Fault`] hooks
//! deliberately corrupt one rule at a time; each documented fault must
//! produce counterexamples on the default grids, which is the sweeps'
//! own self-test.
//!
//! Enumeration order is deterministic, and pairs are checked by rayon
//! workers whose results merge back in enumeration order, so reports
//! (minus wall time) are byte-identical across runs and worker counts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lfactor::{gj_lfactor, Atom, LFactor};
use crate::params::{ArchChar, ArchField, ArchInduced, Block, Field, NonArchCuspidal, RepProduct};
use crate::predicates::{self, PoleReport};
use crate::rational::{rationals_in_window, RootOfUnity, CQ, QQ};
use crate::tensor::{tensor, to_wd_block, TensorError, WDIndec, WDRep};

/// A finite, rational parameter grid for one local field.
///
/// Defaults: continuous exponents are the half-integers in [-3, 3]
/// (imaginary part 0), discrete twists m run to 3, roots of unity of
/// order 1 and 2, segment lengths up to 4, products of up to 2 blocks,
/// no ramified and no opaque blocks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub field: Field,
    /// Bound for |m| on complex characters and for m on induced blocks.
    pub m_max: i64,
    /// Continuous exponents for archimedean blocks.
    pub r_values: Vec<CQ>,
    /// Exponents of unramified characters.
    pub c_values: Vec<QQ>,
    /// Allowed multiplicative orders of the finite-order part.
    pub zeta_orders: Vec<u64>,
    /// Segment lengths 1..=max_len.
    pub max_len: u32,
    /// Products of up to this many blocks (generic sweep).
    pub max_blocks: u32,
    pub include_ramified: bool,
    /// Degrees of opaque cuspidals to include (empty by default).
    pub opaque_degrees: Vec<u32>,
}

impl GridSpec {
    pub fn default_for(field: Field) -> GridSpec {
        GridSpec {
            field,
            m_max: 3,
            r_values: (-6..=6).map(|k| CQ::rational(k, 2)).collect(),
            c_values: (-6..=6).map(|k| QQ::new(k, 2)).collect(),
            zeta_orders: vec![1, 2],
            max_len: 4,
            max_blocks: 2,
            include_ramified: false,
            opaque_degrees: Vec::new(),
        }
    }

    /// The three default grids, one per field.
    pub fn defaults() -> Vec<GridSpec> {
        vec![
            GridSpec::default_for(Field::Real),
            GridSpec::default_for(Field::Complex),
            GridSpec::default_for(Field::NonArch),
        ]
    }

    fn zetas(&self) -> Vec<RootOfUnity> {
        let mut orders = self.zeta_orders.clone();
        orders.sort_unstable();
        orders.dedup();
        let mut out = Vec::new();
        for k in orders {
            if k == 0 {
                continue;
            }
            for j in 0..k {
                let z = RootOfUnity::new(j, k);
                if z.order() == k {
                    out.push(z);
                }
            }
        }
        out
    }
}

/// Every canonical block representable within the grid ranges, exactly
/// once, in a fixed lexicographic order (variant, m, exponent, ζ, length).
pub fn enumerate_blocks(grid: &GridSpec) -> Vec<Block> {
    let mut r_values = grid.r_values.clone();
    r_values.sort();
    r_values.dedup();
    let mut c_values = grid.c_values.clone();
    c_values.sort();
    c_values.dedup();
    let zetas = grid.zetas();

    let mut out = Vec::new();
    match grid.field {
        Field::Real => {
            for m in 0..=1 {
                for r in &r_values {
                    out.push(Block::Char(
                        ArchChar::real(m, r.clone()).expect("grid sign"),
                    ));
                }
            }
            for m in 1..=grid.m_max.max(0) {
                for r in &r_values {
                    out.push(Block::Induced(
                        ArchInduced::new(m, r.clone()).expect("grid m >= 1"),
                    ));
                }
            }
        }
        Field::Complex => {
            for m in -grid.m_max..=grid.m_max {
                for r in &r_values {
                    out.push(Block::Char(ArchChar::complex(m, r.clone())));
                }
            }
        }
        Field::NonArch => {
            for c in &c_values {
                for zeta in &zetas {
                    for len in 1..=grid.max_len {
                        out.push(
                            Block::segment(
                                NonArchCuspidal::unramified(c.clone(), zeta.clone()),
                                len,
                            )
                            .expect("grid len >= 1"),
                        );
                    }
                }
            }
            if grid.include_ramified {
                for len in 1..=grid.max_len {
                    out.push(Block::segment(NonArchCuspidal::Ramified, len).expect("len"));
                }
            }
            for degree in &grid.opaque_degrees {
                for e in &c_values {
                    for len in 1..=grid.max_len {
                        out.push(
                            Block::segment(
                                NonArchCuspidal::opaque(*degree, e.clone())
                                    .expect("grid opaque degree"),
                                len,
                            )
                            .expect("len"),
                        );
                    }
                }
            }
        }
    }
    out
}

/// A deliberate one-rule corruption, used to confirm that the sweeps
/// actually detect broken rules.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Drop the leading (k = 0) Clebsch-Gordan summand of every
    /// segment ⊗ segment decomposition.
    DropTensorSummand,
    /// Forget to negate the continuous exponent when dualizing real
    /// characters.
    FlipRealDualSign,
    /// Shift the pole lattice of real gamma atoms by one.
    ShiftGammaRLattice,
}

impl Fault {
    pub const ALL: [Fault; 3] = [
        Fault::DropTensorSummand,
        Fault::FlipRealDualSign,
        Fault::ShiftGammaRLattice,
    ];
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Fault::DropTensorSummand => "drop-tensor-summand",
            Fault::FlipRealDualSign => "flip-real-dual-sign",
            Fault::ShiftGammaRLattice => "shift-gamma-r-lattice",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drop-tensor-summand" => Ok(Fault::DropTensorSummand),
            "flip-real-dual-sign" => Ok(Fault::FlipRealDualSign),
            "shift-gamma-r-lattice" => Ok(Fault::ShiftGammaRLattice),
            _ => Err(format!(
                "unknown fault {s:?} (expected drop-tensor-summand, flip-real-dual-sign or shift-gamma-r-lattice)"
            )),
        }
    }
}

/// The effective rule set for a sweep: the production rules, or the
/// production rules with one fault injected.
#[derive(Clone, Copy)]
struct Rules {
    fault: Option<Fault>,
}

impl Rules {
    fn lattice(&self, lf: &LFactor) -> LFactor {
        match self.fault {
            Some(Fault::ShiftGammaRLattice) => lf.map_atoms(|a| match a {
                Atom::GammaR { mu } => Atom::GammaR {
                    mu: mu.shift_re(&QQ::one()),
                },
                other => other.clone(),
            }),
            _ => lf.clone(),
        }
    }

    fn pole_order(&self, lf: &LFactor, s0: &QQ) -> u64 {
        self.lattice(lf).pole_order_at(s0)
    }

    fn pole_report(&self, lf: &LFactor, s0: QQ, degraded: bool) -> PoleReport {
        PoleReport::of(&self.lattice(lf), s0, degraded)
    }

    fn dual_block(&self, b: &Block) -> Block {
        match (self.fault, b) {
            (Some(Fault::FlipRealDualSign), Block::Char(ch)) if ch.field == ArchField::Real => {
                b.clone()
            }
            _ => b.dual(),
        }
    }

    fn dual(&self, rho: &RepProduct) -> RepProduct {
        RepProduct::new(rho.blocks().iter().map(|b| self.dual_block(b)).collect())
            .expect("dual of a valid product")
    }

    /// Rankin-Selberg factor of a block pair, with the degraded flag.
    fn rs(&self, b1: &Block, b2: &Block) -> Result<(LFactor, bool), TensorError> {
        if b1.is_opaque() || b2.is_opaque() {
            return Ok((LFactor::one(), true));
        }
        let v = WDRep::from_indec(to_wd_block(b1)?);
        let w = WDRep::from_indec(to_wd_block(b2)?);
        let mut t = tensor(&v, &w)?;
        if self.fault == Some(Fault::DropTensorSummand)
            && matches!(b1, Block::Segment { .. })
            && matches!(b2, Block::Segment { .. })
        {
            t = drop_longest_segment(&t);
        }
        Ok((t.lfactor(), false))
    }

    fn pair_reducible(&self, b1: &Block, b2: &Block) -> Result<(bool, bool), TensorError> {
        if self.fault.is_none() {
            let v = predicates::pair_reducible(b1, b2)?;
            return Ok((v.reducible, v.opaque_degraded));
        }
        if b1.is_opaque() || b2.is_opaque() {
            return Ok((false, true));
        }
        let one = QQ::one();
        let oriented = |hi: &Block, lo: &Block| -> Result<bool, TensorError> {
            if hi.exponent_e() < lo.exponent_e() {
                return Ok(false);
            }
            let (lf, _) = self.rs(&self.dual_block(hi), lo)?;
            Ok(self.pole_order(&lf, &one) >= 1)
        };
        Ok((oriented(b1, b2)? || oriented(b2, b1)?, false))
    }

    fn is_irreducible(&self, blocks: &[Block]) -> Result<(bool, bool), TensorError> {
        let mut degraded = false;
        for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                let (reducible, d) = self.pair_reducible(&blocks[i], &blocks[j])?;
                degraded |= d;
                if reducible {
                    return Ok((false, degraded));
                }
            }
        }
        Ok((true, degraded))
    }
}

/// Remove one copy of the longest special summand: for a tensor of two
/// segments the summands have pairwise distinct lengths and the longest is
/// the k = 0 one.
fn drop_longest_segment(rep: &WDRep) -> WDRep {
    let longest = rep
        .indecs()
        .filter(|(i, _)| matches!(i, WDIndec::Seg { .. }))
        .max_by_key(|(i, _)| i.dim())
        .map(|(i, _)| i.clone());
    let mut out = WDRep::zero();
    for (indec, mult) in rep.indecs() {
        let mult = if Some(indec) == longest.as_ref() {
            mult - 1
        } else {
            mult
        };
        out.push(indec.clone(), mult);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Pat1,
    Generic,
    TemperedRs,
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SweepKind::Pat1 => "pat1",
            SweepKind::Generic => "generic",
            SweepKind::TemperedRs => "tempered-rs",
        };
        write!(f, "{name}")
    }
}

impl FromStr for SweepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pat1" => Ok(SweepKind::Pat1),
            "generic" => Ok(SweepKind::Generic),
            "tempered-rs" => Ok(SweepKind::TemperedRs),
            _ => Err(format!(
                "unknown sweep {s:?} (expected pat1, generic or tempered-rs)"
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// One recorded violation: the offending inputs (in the surface syntax)
/// and the pole reports that witnessed it.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub poles: Vec<PoleReport>,
    pub detail: String,
}

/// Result of one sweep over one grid.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub grid: GridSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fault: Option<Fault>,
    /// Cases scanned (pairs, products, or pair-point assertions).
    pub cases: u64,
    /// Cases that reached the asserted check.
    pub checked: u64,
    /// Cases involving an opaque block, whose factors are degraded to 1.
    pub degraded_cases: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Strip the timing field (used for byte-identical comparisons).
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    kind: SweepKind,
    grid: &GridSpec,
    fault: Option<Fault>,
    cases: u64,
    checked: u64,
    degraded_cases: u64,
    counterexamples: Vec<Counterexample>,
    started: Instant,
) -> SweepReport {
    let verdict = if counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    SweepReport {
        kind,
        grid: grid.clone(),
        fault,
        cases,
        checked,
        degraded_cases,
        verdict,
        counterexamples,
        wall_ms: Some(started.elapsed().as_millis() as u64),
    }
}

/// Pole-pair propagation: every ordered pair whose standard factors both
/// have a pole at s = 1/2 must have a Rankin-Selberg pole at s = 1.
pub fn verify_pat1(grid: &GridSpec) -> SweepReport {
    verify_pat1_with(grid, None)
}

pub fn verify_pat1_with(grid: &GridSpec, fault: Option<Fault>) -> SweepReport {
    let started = Instant::now();
    let rules = Rules { fault };
    let blocks = enumerate_blocks(grid);
    let half = QQ::half();
    let one = QQ::one();

    let qualifying: Vec<&Block> = blocks
        .iter()
        .filter(|b| rules.pole_order(&gj_lfactor(&rep_of(b)), &half) >= 1)
        .collect();

    let cases = (blocks.len() as u64) * (blocks.len() as u64);
    let degraded_cases = {
        let opaque = blocks.iter().filter(|b| b.is_opaque()).count() as u64;
        let n = blocks.len() as u64;
        // pairs touching an opaque block
        2 * opaque * n - opaque * opaque
    };

    let pairs: Vec<(usize, usize)> = (0..qualifying.len())
        .flat_map(|i| (0..qualifying.len()).map(move |j| (i, j)))
        .collect();

    let counterexamples: Vec<Counterexample> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (b1, b2) = (qualifying[i], qualifying[j]);
            let (rs, _) = rules.rs(b1, b2).expect("grid blocks share the field");
            if rules.pole_order(&rs, &one) >= 1 {
                return None;
            }
            Some(Counterexample {
                inputs: vec![b1.to_string(), b2.to_string()],
                poles: vec![
                    rules.pole_report(&gj_lfactor(&rep_of(b1)), half.clone(), b1.is_opaque()),
                    rules.pole_report(&gj_lfactor(&rep_of(b2)), half.clone(), b2.is_opaque()),
                    rules.pole_report(&rs, one.clone(), false),
                ],
                detail: "both standard factors have a pole at 1/2 but the Rankin-Selberg \
                         factor has no pole at 1"
                    .to_string(),
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    finish(
        SweepKind::Pat1,
        grid,
        fault,
        cases,
        (qualifying.len() * qualifying.len()) as u64,
        degraded_cases,
        counterexamples,
        started,
    )
}

/// Generic products: every irreducible product of up to `max_blocks` grid
/// blocks must avoid poles at s = 1/2 on at least one of the two sides.
pub fn verify_generic(grid: &GridSpec) -> SweepReport {
    verify_generic_with(grid, None)
}

pub fn verify_generic_with(grid: &GridSpec, fault: Option<Fault>) -> SweepReport {
    let started = Instant::now();
    let rules = Rules { fault };
    let blocks = enumerate_blocks(grid);
    let half = QQ::half();

    // ordered tuples of grid blocks, lengths 1..=max_blocks
    let mut products: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..grid.max_blocks.max(1) {
        let mut next = Vec::new();
        for tuple in &current {
            for i in 0..blocks.len() {
                let mut t = tuple.clone();
                t.push(i);
                next.push(t);
            }
        }
        products.extend(next.iter().cloned());
        current = next;
    }

    let cases = products.len() as u64;
    let results: Vec<(bool, bool, Option<Counterexample>)> = products
        .par_iter()
        .map(|tuple| {
            let chosen: Vec<Block> = tuple.iter().map(|&i| blocks[i].clone()).collect();
            let degraded_blocks = chosen.iter().any(Block::is_opaque);
            let (irreducible, degraded_pairs) = rules
                .is_irreducible(&chosen)
                .expect("field-homogeneous grid");
            let degraded = degraded_blocks || degraded_pairs;
            if !irreducible {
                return (false, degraded, None);
            }
            let rho = RepProduct::new(chosen).expect("grid blocks are canonical");
            let sigma_order = rules.pole_order(&gj_lfactor(&rho), &half);
            if sigma_order == 0 {
                return (true, degraded, None);
            }
            let dual = rules.dual(&rho);
            let dual_order = rules.pole_order(&gj_lfactor(&dual), &half);
            if dual_order == 0 {
                return (true, degraded, None);
            }
            let ce = Counterexample {
                inputs: vec![rho.to_string()],
                poles: vec![
                    rules.pole_report(&gj_lfactor(&rho), half.clone(), degraded),
                    rules.pole_report(&gj_lfactor(&dual), half.clone(), degraded),
                ],
                detail: "irreducible product with poles at 1/2 on both the sigma and the \
                         dual side"
                    .to_string(),
            };
            (true, degraded, Some(ce))
        })
        .collect();

    let checked = results.iter().filter(|(irr, _, _)| *irr).count() as u64;
    let degraded_cases = results.iter().filter(|(_, d, _)| *d).count() as u64;
    let counterexamples = results.into_iter().filter_map(|(_, _, ce)| ce).collect();

    finish(
        SweepKind::Generic,
        grid,
        fault,
        cases,
        checked,
        degraded_cases,
        counterexamples,
        started,
    )
}

/// Positive rational points s₀ with denominator ≤ 4, 0 < s₀ ≤ 5.
pub fn positive_test_points() -> Vec<QQ> {
    rationals_in_window(4, &QQ::new(1, 4), &QQ::from_int(5))
}

/// Tempered positivity: Rankin-Selberg factors of unitary tempered pairs
/// have no pole at any positive test point.
pub fn verify_tempered_rs(grid: &GridSpec) -> SweepReport {
    verify_tempered_rs_with(grid, None)
}

pub fn verify_tempered_rs_with(grid: &GridSpec, fault: Option<Fault>) -> SweepReport {
    let started = Instant::now();
    let rules = Rules { fault };
    let blocks = enumerate_blocks(grid);
    let points = positive_test_points();

    let tempered: Vec<&Block> = blocks.iter().filter(|b| b.exponent_e().is_zero()).collect();

    let pairs: Vec<(usize, usize)> = (0..tempered.len())
        .flat_map(|i| (0..tempered.len()).map(move |j| (i, j)))
        .collect();
    let cases = (pairs.len() as u64) * (points.len() as u64);
    let degraded_cases = pairs
        .iter()
        .filter(|&&(i, j)| tempered[i].is_opaque() || tempered[j].is_opaque())
        .count() as u64
        * points.len() as u64;

    let counterexamples: Vec<Counterexample> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (b1, b2) = (tempered[i], tempered[j]);
            let (rs, _) = rules.rs(b1, b2).expect("grid blocks share the field");
            let offending: Vec<PoleReport> = points
                .iter()
                .filter(|s0| rules.pole_order(&rs, s0) >= 1)
                .map(|s0| rules.pole_report(&rs, s0.clone(), false))
                .collect();
            if offending.is_empty() {
                return None;
            }
            Some(Counterexample {
                inputs: vec![b1.to_string(), b2.to_string()],
                poles: offending,
                detail: "tempered pair with a Rankin-Selberg pole at a positive point".to_string(),
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    finish(
        SweepKind::TemperedRs,
        grid,
        fault,
        cases,
        cases,
        degraded_cases,
        counterexamples,
        started,
    )
}

/// Run one sweep kind over one grid.
pub fn run_sweep(kind: SweepKind, grid: &GridSpec, fault: Option<Fault>) -> SweepReport {
    match kind {
        SweepKind::Pat1 => verify_pat1_with(grid, fault),
        SweepKind::Generic => verify_generic_with(grid, fault),
        SweepKind::TemperedRs => verify_tempered_rs_with(grid, fault),
    }
}

fn rep_of(b: &Block) -> RepProduct {
    RepProduct::single(b.clone()).expect("grid blocks are canonical")
}
