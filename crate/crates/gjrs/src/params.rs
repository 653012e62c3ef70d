//! Parameters of essentially square-integrable representations and their
//! products.
//!
//! A [`Block`] is one essentially square-integrable parameter: a character
//! of GL(1) over ℝ or ℂ, an induced two-dimensional parameter over ℝ, or a
//! generalized Steinberg segment over a non-archimedean field. A
//! [`RepProduct`] is an ordered list of blocks over a common field, read as
//! the normalized parabolic induction of its blocks.
//!
//! Exponent convention for unramified characters: `Unramified { c, zeta }`
//! is the character with χ(ϖ) = ζ·q^{-c}, i.e. |·|^c times a finite-order
//! unramified character. Its standard L-factor has its pole (when ζ = 1)
//! at s = -c. The residue field size q is treated as a formal
//! transcendental > 1, so ζ·q^a = 1 iff ζ = 1 and a = 0.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{RootOfUnity, CQ, QQ};

/// The local base field of a block or product.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
    NonArch,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
            Field::NonArch => write!(f, "nonarch"),
        }
    }
}

/// Archimedean base field of a GL(1) character.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ArchField {
    Real,
    Complex,
}

impl From<ArchField> for Field {
    fn from(f: ArchField) -> Field {
        match f {
            ArchField::Real => Field::Real,
            ArchField::Complex => Field::Complex,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("real characters require m in {{0, 1}}, got m = {0}")]
    RealCharSign(i64),
    #[error("indR(0, r) is reducible (it splits as chiR(0,r) x chiR(1,r)) and is not a block")]
    ReducibleInduced,
    #[error("opaque cuspidals must have degree >= 2, got {0}")]
    OpaqueDegree(u32),
    #[error("segments must have length >= 1")]
    EmptySegment,
    #[error("a product needs at least one block")]
    EmptyProduct,
    #[error("blocks of a product must share one local field ({0} vs {1})")]
    MixedFields(Field, Field),
}

/// A character of GL(1) over ℝ or ℂ.
///
/// Over ℝ: x ↦ (x/|x|)^m |x|^r with m ∈ {0, 1}.
/// Over ℂ: z ↦ z^m (z z̄)^{r - m/2} with m ∈ ℤ.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArchChar {
    pub field: ArchField,
    pub m: i64,
    pub r: CQ,
}

impl ArchChar {
    pub fn new(field: ArchField, m: i64, r: CQ) -> Result<Self, ParamError> {
        if field == ArchField::Real && !(m == 0 || m == 1) {
            return Err(ParamError::RealCharSign(m));
        }
        Ok(ArchChar { field, m, r })
    }

    pub fn real(m: i64, r: CQ) -> Result<Self, ParamError> {
        ArchChar::new(ArchField::Real, m, r)
    }

    pub fn complex(m: i64, r: CQ) -> Self {
        ArchChar {
            field: ArchField::Complex,
            m,
            r,
        }
    }
}

/// The two-dimensional induced parameter of GL(2, ℝ): induction to the real
/// Weil group of the complex character with parameters (m, r).
///
/// Canonical form has m ≥ 1. Induction is invariant under m ↦ -m, and m = 0
/// is rejected because the induced parameter is then reducible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArchInduced {
    pub m: i64,
    pub r: CQ,
}

impl ArchInduced {
    /// Canonicalizing constructor: negative m is folded to -m, m = 0 is an
    /// error.
    pub fn new(m: i64, r: CQ) -> Result<Self, ParamError> {
        if m == 0 {
            return Err(ParamError::ReducibleInduced);
        }
        Ok(ArchInduced { m: m.abs(), r })
    }
}

/// A supercuspidal of GL(m) over a non-archimedean field, as much of it as
/// the calculator models.
///
/// `Opaque` cuspidals of degree ≥ 2 are carried only by their degree and
/// tempered exponent; their standard and Rankin-Selberg L-factors are taken
/// to be 1 and every report touching them carries a degraded flag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NonArchCuspidal {
    /// GL(1) character with χ(ϖ) = ζ·q^{-c}.
    Unramified { c: QQ, zeta: RootOfUnity },
    /// A ramified GL(1) character, identified up to unramified twist.
    Ramified,
    /// A supercuspidal of GL(degree), degree ≥ 2, with tempered exponent e.
    Opaque { degree: u32, e: QQ },
}

impl NonArchCuspidal {
    pub fn unramified(c: QQ, zeta: RootOfUnity) -> Self {
        NonArchCuspidal::Unramified { c, zeta }
    }

    /// |·|^c, the unramified character with trivial finite-order part.
    pub fn norm_power(c: QQ) -> Self {
        NonArchCuspidal::Unramified {
            c,
            zeta: RootOfUnity::one(),
        }
    }

    pub fn opaque(degree: u32, e: QQ) -> Result<Self, ParamError> {
        if degree < 2 {
            return Err(ParamError::OpaqueDegree(degree));
        }
        Ok(NonArchCuspidal::Opaque { degree, e })
    }

    pub fn degree(&self) -> u32 {
        match self {
            NonArchCuspidal::Unramified { .. } | NonArchCuspidal::Ramified => 1,
            NonArchCuspidal::Opaque { degree, .. } => *degree,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, NonArchCuspidal::Opaque { .. })
    }
}

/// One essentially square-integrable parameter.
///
/// A `Segment { base, len }` is the generalized Steinberg built from `len`
/// consecutive norm-twists of the cuspidal `base`; `base` sits at the top
/// end of the segment, so for an unramified base with exponent c the
/// segment covers exponents c - len + 1, ..., c.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Block {
    Char(ArchChar),
    Induced(ArchInduced),
    Segment { base: NonArchCuspidal, len: u32 },
}

impl Block {
    pub fn segment(base: NonArchCuspidal, len: u32) -> Result<Self, ParamError> {
        if len == 0 {
            return Err(ParamError::EmptySegment);
        }
        Ok(Block::Segment { base, len })
    }

    /// The generalized Steinberg of GL(len) on an unramified character |·|^c.
    pub fn steinberg(c: QQ, len: u32) -> Result<Self, ParamError> {
        Block::segment(NonArchCuspidal::norm_power(c), len)
    }

    pub fn field(&self) -> Field {
        match self {
            Block::Char(ch) => ch.field.into(),
            Block::Induced(_) => Field::Real,
            Block::Segment { .. } => Field::NonArch,
        }
    }

    /// Degree of the general linear group the parameter lives on.
    pub fn degree(&self) -> u64 {
        match self {
            Block::Char(_) => 1,
            Block::Induced(_) => 2,
            Block::Segment { base, len } => base.degree() as u64 * *len as u64,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(
            self,
            Block::Segment { base, .. } if base.is_opaque()
        )
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Block::Char(ch) => ch.field == ArchField::Complex || ch.m == 0 || ch.m == 1,
            Block::Induced(ind) => ind.m >= 1,
            Block::Segment { base, len } => {
                *len >= 1
                    && match base {
                        NonArchCuspidal::Opaque { degree, .. } => *degree >= 2,
                        _ => true,
                    }
            }
        }
    }

    /// Fold an induced parameter with m < 0 to its conjugate with m > 0;
    /// reject m = 0. Other well-formed blocks pass through unchanged.
    /// Idempotent.
    pub fn canonicalize(self) -> Result<Block, ParamError> {
        match self {
            Block::Char(ch) => Ok(Block::Char(ArchChar::new(ch.field, ch.m, ch.r)?)),
            Block::Induced(ind) => Ok(Block::Induced(ArchInduced::new(ind.m, ind.r)?)),
            Block::Segment { base, len } => {
                if let NonArchCuspidal::Opaque { degree, .. } = &base {
                    if *degree < 2 {
                        return Err(ParamError::OpaqueDegree(*degree));
                    }
                }
                Block::segment(base, len)
            }
        }
    }

    /// The contragredient parameter. An involution on canonical blocks.
    ///
    /// For a segment the members dualize one by one, so the new top end is
    /// the dual of the old bottom end: the top exponent goes from c to
    /// -c + (len - 1). This keeps the unitary Steinberg self-dual and makes
    /// exponent_e(dual) = -exponent_e hold. Ramified bases are identified
    /// up to unramified twist and are fixed by duality.
    pub fn dual(&self) -> Block {
        match self {
            Block::Char(ch) => {
                let m = match ch.field {
                    ArchField::Real => ch.m,
                    ArchField::Complex => -ch.m,
                };
                Block::Char(ArchChar {
                    field: ch.field,
                    m,
                    r: -&ch.r,
                })
            }
            Block::Induced(ind) => Block::Induced(ArchInduced {
                m: ind.m,
                r: -&ind.r,
            }),
            Block::Segment { base, len } => {
                let span = QQ::from_int(*len as i64 - 1);
                let base = match base {
                    NonArchCuspidal::Unramified { c, zeta } => NonArchCuspidal::Unramified {
                        c: &-c + &span,
                        zeta: zeta.inv(),
                    },
                    NonArchCuspidal::Ramified => NonArchCuspidal::Ramified,
                    NonArchCuspidal::Opaque { degree, e } => NonArchCuspidal::Opaque {
                        degree: *degree,
                        e: &-e + &span,
                    },
                };
                Block::Segment { base, len: *len }
            }
        }
    }

    /// Twist by |det|^t: shifts the continuous exponent by t.
    ///
    /// Ramified bases are identified up to unramified twist, so they absorb
    /// the shift; every other variant carries it exactly.
    pub fn twist(&self, t: &QQ) -> Block {
        match self {
            Block::Char(ch) => Block::Char(ArchChar {
                field: ch.field,
                m: ch.m,
                r: ch.r.shift_re(t),
            }),
            Block::Induced(ind) => Block::Induced(ArchInduced {
                m: ind.m,
                r: ind.r.shift_re(t),
            }),
            Block::Segment { base, len } => {
                let base = match base {
                    NonArchCuspidal::Unramified { c, zeta } => NonArchCuspidal::Unramified {
                        c: c + t,
                        zeta: zeta.clone(),
                    },
                    NonArchCuspidal::Ramified => NonArchCuspidal::Ramified,
                    NonArchCuspidal::Opaque { degree, e } => NonArchCuspidal::Opaque {
                        degree: *degree,
                        e: e + t,
                    },
                };
                Block::Segment { base, len: *len }
            }
        }
    }

    /// Tempered exponent e(σ): the real number such that σ·|det|^{-e} is
    /// unitarizable and tempered. For a segment this is the exponent of its
    /// center.
    pub fn exponent_e(&self) -> QQ {
        let half_span = |len: u32| QQ::new(len as i64 - 1, 2);
        match self {
            Block::Char(ch) => ch.r.re.clone(),
            Block::Induced(ind) => ind.r.re.clone(),
            Block::Segment { base, len } => match base {
                NonArchCuspidal::Unramified { c, .. } => c - &half_span(*len),
                NonArchCuspidal::Ramified => -half_span(*len),
                NonArchCuspidal::Opaque { e, .. } => e - &half_span(*len),
            },
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Char(ch) => match ch.field {
                ArchField::Real => write!(f, "chiR({},{})", ch.m, ch.r),
                ArchField::Complex => write!(f, "chiC({},{})", ch.m, ch.r),
            },
            Block::Induced(ind) => write!(f, "indR({},{})", ind.m, ind.r),
            Block::Segment { base, len } => match base {
                NonArchCuspidal::Unramified { c, zeta } if zeta.is_trivial() => {
                    write!(f, "st(unram({}),{})", c, len)
                }
                NonArchCuspidal::Unramified { c, zeta } => {
                    write!(f, "st(unram({},zeta={}),{})", c, zeta, len)
                }
                NonArchCuspidal::Ramified => write!(f, "st(ram,{})", len),
                NonArchCuspidal::Opaque { degree, e } => {
                    write!(f, "st(cusp({},{}),{})", degree, e, len)
                }
            },
        }
    }
}

/// An ordered, field-homogeneous, nonempty list of blocks, read as the
/// normalized induction of its members.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RepProduct {
    blocks: Vec<Block>,
}

impl RepProduct {
    /// Canonicalizes every block and checks field homogeneity.
    pub fn new(blocks: Vec<Block>) -> Result<Self, ParamError> {
        if blocks.is_empty() {
            return Err(ParamError::EmptyProduct);
        }
        let blocks = blocks
            .into_iter()
            .map(Block::canonicalize)
            .collect::<Result<Vec<_>, _>>()?;
        let field = blocks[0].field();
        for b in &blocks[1..] {
            if b.field() != field {
                return Err(ParamError::MixedFields(field, b.field()));
            }
        }
        Ok(RepProduct { blocks })
    }

    pub fn single(block: Block) -> Result<Self, ParamError> {
        RepProduct::new(vec![block])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn field(&self) -> Field {
        self.blocks[0].field()
    }

    pub fn degree(&self) -> u64 {
        self.blocks.iter().map(Block::degree).sum()
    }

    pub fn has_opaque(&self) -> bool {
        self.blocks.iter().any(Block::is_opaque)
    }

    pub fn dual(&self) -> RepProduct {
        RepProduct {
            blocks: self.blocks.iter().map(Block::dual).collect(),
        }
    }

    pub fn twist(&self, t: &QQ) -> RepProduct {
        RepProduct {
            blocks: self.blocks.iter().map(|b| b.twist(t)).collect(),
        }
    }
}

impl fmt::Display for RepProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}
