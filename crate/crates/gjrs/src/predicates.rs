//! Decision layer: pole tests at s = 1/2, theta-lift irreducibility
//! certificates, and reducibility predicates.
//!
//! The certificate logic: if the standard L-factor of σ or of its
//! contragredient has no pole at s = 1/2, both full theta lifts of σ are
//! irreducible and isomorphic to the contragredient. The certificate only
//! ever asserts irreducibility; its absence means the criterion is
//! inconclusive, never that a lift is reducible.
//!
//! Reducibility of a pair of essentially square-integrable blocks is read
//! off the Rankin-Selberg factor: σ₁ ×̇ σ₂ is reducible exactly when the
//! factor L(s, σ₁^∨ × σ₂) has a pole at s = 1 on the orientation with
//! e(σ₁) ≥ e(σ₂). Both orientations are consulted since reducibility is
//! order-independent.

use serde::{Deserialize, Serialize};

use crate::lfactor::{gj_lfactor, Atom, LFactor};
use crate::params::{Block, RepProduct};
use crate::rational::QQ;
use crate::tensor::{rs_lfactor, TensorError};

/// One atom's contribution to a pole.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Contribution {
    pub atom: Atom,
    pub mult: u64,
}

/// Pole data of an L-factor at one rational point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PoleReport {
    pub s: QQ,
    pub order: u64,
    pub contributors: Vec<Contribution>,
    pub opaque_degraded: bool,
}

impl PoleReport {
    pub fn of(lfactor: &LFactor, s0: QQ, opaque_degraded: bool) -> Self {
        let (order, contributors) = lfactor.pole_order(&s0);
        PoleReport {
            s: s0,
            order,
            contributors: contributors
                .into_iter()
                .map(|(atom, mult)| Contribution { atom, mult })
                .collect(),
            opaque_degraded,
        }
    }
}

/// Pole report of the standard L-factor at s = 1/2. The degraded flag is
/// set when the product contains an opaque block whose factor was taken
/// to be 1.
pub fn has_pole_at_half(rho: &RepProduct) -> PoleReport {
    PoleReport::of(&gj_lfactor(rho), QQ::half(), rho.has_opaque())
}

/// Irreducibility certificate for the full theta lifts of σ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThetaCertificate {
    pub sigma_pole_at_half: PoleReport,
    pub dual_pole_at_half: PoleReport,
    pub certified: bool,
    pub reason: String,
}

pub fn theta_certificate(rho: &RepProduct) -> ThetaCertificate {
    let sigma = has_pole_at_half(rho);
    let dual = has_pole_at_half(&rho.dual());
    let certified = sigma.order == 0 || dual.order == 0;
    let reason = match (sigma.order == 0, dual.order == 0) {
        (true, true) => "no pole at 1/2 on either side; both full theta lifts are irreducible and isomorphic to the contragredient".to_string(),
        (true, false) => "sigma side has no pole at 1/2; both full theta lifts are irreducible and isomorphic to the contragredient".to_string(),
        (false, true) => "dual side has no pole at 1/2; both full theta lifts are irreducible and isomorphic to the contragredient".to_string(),
        (false, false) => "poles at 1/2 on both sides; the no-pole criterion is inconclusive".to_string(),
    };
    ThetaCertificate {
        sigma_pole_at_half: sigma,
        dual_pole_at_half: dual,
        certified,
        reason,
    }
}

/// Verdict of the pair reducibility test.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairVerdict {
    pub reducible: bool,
    /// True when an opaque block forced the degraded answer `reducible =
    /// false`.
    pub opaque_degraded: bool,
}

/// Whether the normalized induction b₁ ×̇ b₂ of two essentially
/// square-integrable blocks is reducible.
pub fn pair_reducible(b1: &Block, b2: &Block) -> Result<PairVerdict, TensorError> {
    if b1.field() != b2.field() {
        return Err(TensorError::MixedFields(b1.field(), b2.field()));
    }
    if b1.is_opaque() || b2.is_opaque() {
        return Ok(PairVerdict {
            reducible: false,
            opaque_degraded: true,
        });
    }
    let one = QQ::one();
    let oriented = |hi: &Block, lo: &Block| -> Result<bool, TensorError> {
        if hi.exponent_e() < lo.exponent_e() {
            return Ok(false);
        }
        let rs = rs_lfactor(
            &RepProduct::single(hi.dual()).expect("canonical block"),
            &RepProduct::single(lo.clone()).expect("canonical block"),
        )?;
        Ok(rs.lfactor.pole_order_at(&one) >= 1)
    };
    Ok(PairVerdict {
        reducible: oriented(b1, b2)? || oriented(b2, b1)?,
        opaque_degraded: false,
    })
}

/// Verdict of the product irreducibility test.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProductVerdict {
    pub irreducible: bool,
    pub opaque_degraded: bool,
}

/// A product of essentially square-integrable blocks is irreducible iff no
/// pair of its blocks is reducible.
pub fn is_irreducible_product(rho: &RepProduct) -> Result<ProductVerdict, TensorError> {
    let blocks = rho.blocks();
    let mut opaque_degraded = false;
    for i in 0..blocks.len() {
        for j in (i + 1)..blocks.len() {
            let verdict = pair_reducible(&blocks[i], &blocks[j])?;
            opaque_degraded |= verdict.opaque_degraded;
            if verdict.reducible {
                return Ok(ProductVerdict {
                    irreducible: false,
                    opaque_degraded,
                });
            }
        }
    }
    Ok(ProductVerdict {
        irreducible: true,
        opaque_degraded,
    })
}
