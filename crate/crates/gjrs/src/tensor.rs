//! Weil-Deligne tensor calculus and Rankin-Selberg L-factors.
//!
//! Blocks convert to indecomposable parameters ([`WDIndec`]), tensor
//! products decompose by the Mackey rules over the real Weil group and by
//! Clebsch-Gordan on the special (Sp) part non-archimedeanly, and the
//! Rankin-Selberg L-factor of a pair of products is the standard factor of
//! the tensor of their parameters.
//!
//! Non-archimedean convention: `Seg { chi, len }` is χ ⊗ Sp(len) with χ at
//! the top end, so its L-factor is the Euler factor of χ itself, and
//!
//!   Seg{χ₁,ℓ₁} ⊗ Seg{χ₂,ℓ₂} = ⊕_{k=0}^{min(ℓ₁,ℓ₂)-1}
//!       Seg{χ₁χ₂·|·|^{-k}, ℓ₁+ℓ₂-1-2k}
//!
//! (Clebsch-Gordan on lengths; the k-th summand's top end is χ₁χ₂ moved k
//! steps down the segment, exponent c₁+c₂-k). With the top-end L-factor
//! convention this reproduces the classical pole set {1, ..., n₂} for a
//! pair of Steinberg parameters on |·|^{-1/2}.
//!
//! Opaque cuspidals never enter the calculus: every Rankin-Selberg factor
//! touching one is degraded to 1 and flagged.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lfactor::{Atom, LFactor};
use crate::params::{ArchField, Block, Field, NonArchCuspidal, RepProduct};
use crate::rational::{RootOfUnity, CQ, QQ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("tensor operands must share one local field ({0} vs {1})")]
    MixedFields(Field, Field),
    #[error("opaque cuspidals carry no parameter data and do not enter the tensor calculus")]
    OpaqueBlock,
}

/// A GL(1) character over the non-archimedean field: the part of a cuspidal
/// the Weil-Deligne side can see.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gl1Char {
    Unramified { c: QQ, zeta: RootOfUnity },
    Ramified,
}

impl Gl1Char {
    /// Character product: exponents add, finite-order parts multiply, and
    /// anything times a ramified character stays ramified.
    pub fn mul(&self, other: &Gl1Char) -> Gl1Char {
        match (self, other) {
            (Gl1Char::Unramified { c: c1, zeta: z1 }, Gl1Char::Unramified { c: c2, zeta: z2 }) => {
                Gl1Char::Unramified {
                    c: c1 + c2,
                    zeta: z1.mul(z2),
                }
            }
            _ => Gl1Char::Ramified,
        }
    }

    /// Multiply by |·|^t.
    pub fn norm_shift(&self, t: &QQ) -> Gl1Char {
        match self {
            Gl1Char::Unramified { c, zeta } => Gl1Char::Unramified {
                c: c + t,
                zeta: zeta.clone(),
            },
            Gl1Char::Ramified => Gl1Char::Ramified,
        }
    }

    pub fn inv(&self) -> Gl1Char {
        match self {
            Gl1Char::Unramified { c, zeta } => Gl1Char::Unramified {
                c: -c,
                zeta: zeta.inv(),
            },
            Gl1Char::Ramified => Gl1Char::Ramified,
        }
    }
}

/// An indecomposable Weil-Deligne parameter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum WDIndec {
    /// One-dimensional over ℝ: the character (sign)^m |·|^r, m ∈ {0, 1}.
    RDim1 { m: i64, r: CQ },
    /// Two-dimensional over ℝ: induction of the complex character (m, r),
    /// canonical m ≥ 1.
    RDim2 { m: i64, r: CQ },
    /// One-dimensional over ℂ: z ↦ z^m (z z̄)^{r-m/2}.
    CDim1 { m: i64, r: CQ },
    /// χ ⊗ Sp(len) with χ at the top end of the segment.
    Seg { chi: Gl1Char, len: u32 },
}

impl WDIndec {
    pub fn dim(&self) -> u64 {
        match self {
            WDIndec::RDim1 { .. } | WDIndec::CDim1 { .. } => 1,
            WDIndec::RDim2 { .. } => 2,
            WDIndec::Seg { len, .. } => *len as u64,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            WDIndec::RDim1 { .. } | WDIndec::RDim2 { .. } => Field::Real,
            WDIndec::CDim1 { .. } => Field::Complex,
            WDIndec::Seg { .. } => Field::NonArch,
        }
    }

    pub fn dual(&self) -> WDIndec {
        match self {
            WDIndec::RDim1 { m, r } => WDIndec::RDim1 { m: *m, r: -r },
            WDIndec::RDim2 { m, r } => WDIndec::RDim2 { m: *m, r: -r },
            WDIndec::CDim1 { m, r } => WDIndec::CDim1 { m: -m, r: -r },
            WDIndec::Seg { chi, len } => {
                // members dualize pointwise; the new top end is the dual of
                // the old bottom end, chi^{-1} |·|^{len-1}
                let span = QQ::from_int(*len as i64 - 1);
                WDIndec::Seg {
                    chi: chi.inv().norm_shift(&span),
                    len: *len,
                }
            }
        }
    }

    /// Standard L-factor of the indecomposable.
    pub fn lfactor(&self) -> LFactor {
        match self {
            WDIndec::RDim1 { m, r } => {
                LFactor::from_atom(Atom::gamma_r(r.shift_re(&QQ::from_int(*m))))
            }
            WDIndec::RDim2 { m, r } => {
                LFactor::from_atom(Atom::gamma_c(r.shift_re(&QQ::new(m.abs(), 2))))
            }
            WDIndec::CDim1 { m, r } => {
                LFactor::from_atom(Atom::gamma_c(r.shift_re(&QQ::new(m.abs(), 2))))
            }
            WDIndec::Seg { chi, .. } => match chi {
                Gl1Char::Unramified { c, zeta } => {
                    LFactor::from_atom(Atom::euler(c.clone(), zeta.clone()))
                }
                Gl1Char::Ramified => LFactor::one(),
            },
        }
    }
}

impl fmt::Display for WDIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WDIndec::RDim1 { m, r } => write!(f, "chiR({m},{r})"),
            WDIndec::RDim2 { m, r } => write!(f, "indR({m},{r})"),
            WDIndec::CDim1 { m, r } => write!(f, "chiC({m},{r})"),
            WDIndec::Seg { chi, len } => match chi {
                Gl1Char::Unramified { c, zeta } if zeta.is_trivial() => {
                    write!(f, "unram({c})(x)Sp({len})")
                }
                Gl1Char::Unramified { c, zeta } => {
                    write!(f, "unram({c},zeta={zeta})(x)Sp({len})")
                }
                Gl1Char::Ramified => write!(f, "ram(x)Sp({len})"),
            },
        }
    }
}

/// A finite multiset of indecomposables over a common field.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WDRep {
    indecs: BTreeMap<WDIndec, u64>,
}

impl WDRep {
    pub fn zero() -> Self {
        WDRep::default()
    }

    pub fn from_indec(indec: WDIndec) -> Self {
        let mut rep = WDRep::zero();
        rep.push(indec, 1);
        rep
    }

    pub fn push(&mut self, indec: WDIndec, mult: u64) {
        if mult > 0 {
            *self.indecs.entry(indec).or_insert(0) += mult;
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &WDRep) -> WDRep {
        let mut out = self.clone();
        for (indec, mult) in &other.indecs {
            out.push(indec.clone(), *mult);
        }
        out
    }

    pub fn dim(&self) -> u64 {
        self.indecs.iter().map(|(i, m)| i.dim() * m).sum()
    }

    pub fn indecs(&self) -> impl Iterator<Item = (&WDIndec, u64)> {
        self.indecs.iter().map(|(i, m)| (i, *m))
    }

    pub fn dual(&self) -> WDRep {
        let mut out = WDRep::zero();
        for (indec, mult) in &self.indecs {
            out.push(indec.dual(), *mult);
        }
        out
    }

    /// Product of the L-factors of the summands.
    pub fn lfactor(&self) -> LFactor {
        let mut out = LFactor::one();
        for (indec, mult) in &self.indecs {
            for (atom, m) in indec.lfactor().atoms() {
                out.push_with_multiplicity(atom.clone(), m * mult);
            }
        }
        out
    }
}

/// Parameter of a single block. Opaque cuspidals are rejected.
pub fn to_wd_block(block: &Block) -> Result<WDIndec, TensorError> {
    match block {
        Block::Char(ch) => Ok(match ch.field {
            ArchField::Real => WDIndec::RDim1 {
                m: ch.m,
                r: ch.r.clone(),
            },
            ArchField::Complex => WDIndec::CDim1 {
                m: ch.m,
                r: ch.r.clone(),
            },
        }),
        Block::Induced(ind) => Ok(WDIndec::RDim2 {
            m: ind.m,
            r: ind.r.clone(),
        }),
        Block::Segment { base, len } => {
            let chi = match base {
                NonArchCuspidal::Unramified { c, zeta } => Gl1Char::Unramified {
                    c: c.clone(),
                    zeta: zeta.clone(),
                },
                NonArchCuspidal::Ramified => Gl1Char::Ramified,
                NonArchCuspidal::Opaque { .. } => return Err(TensorError::OpaqueBlock),
            };
            Ok(WDIndec::Seg { chi, len: *len })
        }
    }
}

/// Parameter of a product: the direct sum of its block parameters.
pub fn to_wd(rep: &RepProduct) -> Result<WDRep, TensorError> {
    let mut out = WDRep::zero();
    for b in rep.blocks() {
        out.push(to_wd_block(b)?, 1);
    }
    Ok(out)
}

/// The decomposition of the reducible induction with m = 0: the direct sum
/// of the trivial-sign and sign characters with the same exponent.
pub fn expand_ind_zero(r: &CQ) -> WDRep {
    let mut out = WDRep::zero();
    out.push(WDIndec::RDim1 { m: 0, r: r.clone() }, 1);
    out.push(WDIndec::RDim1 { m: 1, r: r.clone() }, 1);
    out
}

/// Tensor product of two indecomposables.
pub fn tensor_indec(a: &WDIndec, b: &WDIndec) -> Result<WDRep, TensorError> {
    use WDIndec::*;
    let rep = match (a, b) {
        (RDim1 { m: m1, r: r1 }, RDim1 { m: m2, r: r2 }) => WDRep::from_indec(RDim1 {
            m: (m1 + m2).rem_euclid(2),
            r: r1 + r2,
        }),
        (RDim1 { r: r1, .. }, RDim2 { m: m2, r: r2 })
        | (RDim2 { m: m2, r: r2 }, RDim1 { r: r1, .. }) => {
            // the sign of the one-dimensional factor is invisible after induction
            WDRep::from_indec(RDim2 { m: *m2, r: r1 + r2 })
        }
        (RDim2 { m: m1, r: r1 }, RDim2 { m: m2, r: r2 }) => {
            let r = r1 + r2;
            let mut rep = WDRep::from_indec(RDim2 {
                m: m1 + m2,
                r: r.clone(),
            });
            if m1 == m2 {
                rep = rep.sum(&expand_ind_zero(&r));
            } else {
                rep.push(
                    RDim2 {
                        m: (m1 - m2).abs(),
                        r,
                    },
                    1,
                );
            }
            rep
        }
        (CDim1 { m: m1, r: r1 }, CDim1 { m: m2, r: r2 }) => WDRep::from_indec(CDim1 {
            m: m1 + m2,
            r: r1 + r2,
        }),
        (
            Seg {
                chi: chi1,
                len: len1,
            },
            Seg {
                chi: chi2,
                len: len2,
            },
        ) => {
            let prod = chi1.mul(chi2);
            let min = (*len1).min(*len2);
            let mut rep = WDRep::zero();
            for k in 0..min {
                rep.push(
                    Seg {
                        chi: prod.norm_shift(&QQ::from_int(-(k as i64))),
                        len: len1 + len2 - 1 - 2 * k,
                    },
                    1,
                );
            }
            rep
        }
        _ => return Err(TensorError::MixedFields(a.field(), b.field())),
    };
    Ok(rep)
}

/// Tensor product, extended bilinearly over direct sums.
pub fn tensor(v: &WDRep, w: &WDRep) -> Result<WDRep, TensorError> {
    let mut out = WDRep::zero();
    for (a, ma) in v.indecs() {
        for (b, mb) in w.indecs() {
            let pairwise = tensor_indec(a, b)?;
            for (indec, mult) in pairwise.indecs() {
                out.push(indec.clone(), mult * ma * mb);
            }
        }
    }
    Ok(out)
}

/// A Rankin-Selberg L-factor, with a flag recording whether any opaque
/// block pair was degraded to the factor 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RsFactor {
    pub lfactor: LFactor,
    pub opaque_degraded: bool,
}

/// Rankin-Selberg L-factor of two products: the standard factor of the
/// tensor of their parameters, multiplied over all block pairs. Pairs
/// involving an opaque cuspidal contribute 1 and set the degraded flag.
pub fn rs_lfactor(rho1: &RepProduct, rho2: &RepProduct) -> Result<RsFactor, TensorError> {
    if rho1.field() != rho2.field() {
        return Err(TensorError::MixedFields(rho1.field(), rho2.field()));
    }
    let mut lfactor = LFactor::one();
    let mut opaque_degraded = false;
    for b1 in rho1.blocks() {
        for b2 in rho2.blocks() {
            if b1.is_opaque() || b2.is_opaque() {
                opaque_degraded = true;
                continue;
            }
            let t = tensor(
                &WDRep::from_indec(to_wd_block(b1)?),
                &WDRep::from_indec(to_wd_block(b2)?),
            )?;
            lfactor = lfactor.multiply(&t.lfactor());
        }
    }
    Ok(RsFactor {
        lfactor,
        opaque_degraded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfactor::gj_lfactor;
    use crate::params::{ArchChar, ArchInduced};
    use crate::rational::rationals_in_window;

    fn qq(n: i64, d: i64) -> QQ {
        QQ::new(n, d)
    }

    fn chi_r(m: i64, r: CQ) -> Block {
        Block::Char(ArchChar::real(m, r).unwrap())
    }

    fn ind_r(m: i64, r: CQ) -> Block {
        Block::Induced(ArchInduced::new(m, r).unwrap())
    }

    fn st(c: QQ, len: u32) -> Block {
        Block::steinberg(c, len).unwrap()
    }

    fn single(b: Block) -> RepProduct {
        RepProduct::single(b).unwrap()
    }

    #[test]
    fn to_wd_examples() {
        assert_eq!(
            to_wd_block(&st(qq(-1, 2), 4)).unwrap(),
            WDIndec::Seg {
                chi: Gl1Char::Unramified {
                    c: qq(-1, 2),
                    zeta: RootOfUnity::one()
                },
                len: 4
            }
        );
        assert_eq!(
            to_wd_block(&ind_r(2, CQ::zero())).unwrap(),
            WDIndec::RDim2 {
                m: 2,
                r: CQ::zero()
            }
        );
        let opaque = Block::segment(NonArchCuspidal::opaque(2, QQ::zero()).unwrap(), 1).unwrap();
        assert_eq!(to_wd_block(&opaque), Err(TensorError::OpaqueBlock));
    }

    #[test]
    fn expand_ind_zero_is_trivial_plus_sign() {
        let rep = expand_ind_zero(&CQ::zero());
        let parts: Vec<_> = rep.indecs().map(|(i, m)| (i.clone(), m)).collect();
        assert_eq!(
            parts,
            vec![
                (
                    WDIndec::RDim1 {
                        m: 0,
                        r: CQ::zero()
                    },
                    1
                ),
                (
                    WDIndec::RDim1 {
                        m: 1,
                        r: CQ::zero()
                    },
                    1
                ),
            ]
        );
        // its L-factor carries the duplication pole set of Gamma_C(s+r)
        let r = CQ::rational(1, 2);
        let lf = expand_ind_zero(&r).lfactor();
        let gc = LFactor::from_atom(Atom::gamma_c(r.clone()));
        for s0 in rationals_in_window(4, &QQ::from_int(-10), &QQ::from_int(10)) {
            assert_eq!(lf.pole_order_at(&s0), gc.pole_order_at(&s0), "s0 = {s0}");
        }
        // dual commutes with the expansion
        assert_eq!(expand_ind_zero(&r).dual(), expand_ind_zero(&-&r));
    }

    #[test]
    fn two_dim_tensor_two_dim_splits() {
        let a = WDIndec::RDim2 {
            m: 3,
            r: CQ::rational(1, 2),
        };
        let b = WDIndec::RDim2 {
            m: 1,
            r: CQ::zero(),
        };
        let t = tensor_indec(&a, &b).unwrap();
        let expected: Vec<(WDIndec, u64)> = vec![
            (
                WDIndec::RDim2 {
                    m: 2,
                    r: CQ::rational(1, 2),
                },
                1,
            ),
            (
                WDIndec::RDim2 {
                    m: 4,
                    r: CQ::rational(1, 2),
                },
                1,
            ),
        ];
        assert_eq!(
            t.indecs().map(|(i, m)| (i.clone(), m)).collect::<Vec<_>>(),
            expected
        );
        assert_eq!(t.dim(), 4);

        // equal m's expand the reducible branch
        let t2 = tensor_indec(&a, &a).unwrap();
        assert_eq!(t2.dim(), 4);
        let has_signs = t2.indecs().any(|(i, _)| matches!(i, WDIndec::RDim1 { .. }));
        assert!(has_signs, "m1 == m2 must expand into sign characters");
    }

    #[test]
    fn one_dim_absorbs_into_two_dim() {
        // resulting factor is independent of the sign character's m
        let a = WDIndec::RDim2 {
            m: 2,
            r: CQ::rational(-1, 2),
        };
        for m2 in [0, 1] {
            let b = WDIndec::RDim1 {
                m: m2,
                r: CQ::rational(1, 2),
            };
            let t = tensor_indec(&a, &b).unwrap();
            assert_eq!(
                t,
                WDRep::from_indec(WDIndec::RDim2 {
                    m: 2,
                    r: CQ::zero()
                })
            );
        }
    }

    #[test]
    fn steinberg_pair_pole_set() {
        // pair of Steinberg-type segments on |.|^{-1/2}: poles exactly at
        // s = 1, ..., n2, each simple
        for n1 in 1..=6u32 {
            for n2 in 1..=n1 {
                let rs =
                    rs_lfactor(&single(st(qq(-1, 2), n1)), &single(st(qq(-1, 2), n2))).unwrap();
                let poles = rs
                    .lfactor
                    .poles_in_window(&QQ::from_int(-100), &QQ::from_int(100));
                let expected: Vec<(QQ, u64)> =
                    (1..=n2 as i64).map(|j| (QQ::from_int(j), 1)).collect();
                assert_eq!(poles, expected, "n1 = {n1}, n2 = {n2}");
            }
        }
    }

    #[test]
    fn steinberg_pair_matches_shifted_euler_product() {
        // exact multiset identity with prod_{j=0}^{n2-1} Euler(s + j - n2)
        for (n1, n2) in [(1u32, 1u32), (3, 2), (6, 6), (5, 1)] {
            let rs = rs_lfactor(&single(st(qq(-1, 2), n1)), &single(st(qq(-1, 2), n2))).unwrap();
            let mut expected = LFactor::one();
            let base = LFactor::from_atom(Atom::euler_trivial(QQ::from_int(-(n2 as i64))));
            for j in 0..n2 as i64 {
                expected = expected.multiply(&base.shift(&QQ::from_int(j)));
            }
            assert_eq!(rs.lfactor, expected, "n1 = {n1}, n2 = {n2}");
        }
    }

    #[test]
    fn rs_examples() {
        // norm^{-1/2} against itself
        let rs = rs_lfactor(&single(st(qq(-1, 2), 1)), &single(st(qq(-1, 2), 1))).unwrap();
        assert_eq!(
            rs.lfactor,
            LFactor::from_atom(Atom::euler_trivial(QQ::from_int(-1)))
        );
        assert_eq!(rs.lfactor.pole_order_at(&QQ::one()), 1);

        // induced against a real character: Gamma_C(s + r1 + r2 + m1/2)
        let rs = rs_lfactor(
            &single(ind_r(3, CQ::rational(1, 2))),
            &single(chi_r(1, CQ::rational(-1, 4))),
        )
        .unwrap();
        assert_eq!(
            rs.lfactor,
            LFactor::from_atom(Atom::gamma_c(CQ::real(qq(7, 4))))
        );

        // two real characters chi_{0,-1/2}: Gamma_R(s - 1), pole at 1
        let rs = rs_lfactor(
            &single(chi_r(0, CQ::rational(-1, 2))),
            &single(chi_r(0, CQ::rational(-1, 2))),
        )
        .unwrap();
        assert_eq!(
            rs.lfactor,
            LFactor::from_atom(Atom::gamma_r(CQ::from_int(-1)))
        );
        assert_eq!(rs.lfactor.pole_order_at(&QQ::one()), 1);
    }

    #[test]
    fn tensor_is_commutative() {
        let samples = vec![
            WDRep::from_indec(WDIndec::Seg {
                chi: Gl1Char::Unramified {
                    c: qq(1, 2),
                    zeta: RootOfUnity::minus_one(),
                },
                len: 3,
            }),
            WDRep::from_indec(WDIndec::Seg {
                chi: Gl1Char::Unramified {
                    c: qq(-1, 1),
                    zeta: RootOfUnity::one(),
                },
                len: 2,
            })
            .sum(&WDRep::from_indec(WDIndec::Seg {
                chi: Gl1Char::Ramified,
                len: 1,
            })),
        ];
        for v in &samples {
            for w in &samples {
                assert_eq!(tensor(v, w).unwrap(), tensor(w, v).unwrap());
                assert_eq!(tensor(v, w).unwrap().dim(), v.dim() * w.dim());
            }
        }

        let arch = vec![
            WDRep::from_indec(WDIndec::RDim1 {
                m: 1,
                r: CQ::rational(1, 2),
            }),
            WDRep::from_indec(WDIndec::RDim2 {
                m: 2,
                r: CQ::zero(),
            }),
            expand_ind_zero(&CQ::rational(-1, 2)),
        ];
        for v in &arch {
            for w in &arch {
                assert_eq!(tensor(v, w).unwrap(), tensor(w, v).unwrap());
                assert_eq!(tensor(v, w).unwrap().dim(), v.dim() * w.dim());
            }
        }
    }

    #[test]
    fn dual_commutes_with_tensor_and_to_wd() {
        let blocks = vec![chi_r(1, CQ::rational(-1, 2)), ind_r(2, CQ::rational(3, 2))];
        for b in &blocks {
            assert_eq!(
                to_wd_block(&b.dual()).unwrap(),
                to_wd_block(b).unwrap().dual()
            );
        }
        let segs = vec![st(qq(-1, 2), 2), st(qq(3, 2), 4)];
        for b in &segs {
            assert_eq!(
                to_wd_block(&b.dual()).unwrap(),
                to_wd_block(b).unwrap().dual()
            );
        }
        for b1 in &segs {
            for b2 in &segs {
                let v = WDRep::from_indec(to_wd_block(b1).unwrap());
                let w = WDRep::from_indec(to_wd_block(b2).unwrap());
                assert_eq!(
                    tensor(&v.dual(), &w.dual()).unwrap(),
                    tensor(&v, &w).unwrap().dual()
                );
            }
        }
    }

    #[test]
    fn rs_of_duals_is_dual_of_rs() {
        let pairs = vec![
            (single(st(qq(-1, 2), 2)), single(st(qq(-1, 2), 2))),
            (
                single(chi_r(0, CQ::rational(-1, 2))),
                single(chi_r(1, CQ::zero())),
            ),
            (
                single(ind_r(1, CQ::rational(-1, 1))),
                single(ind_r(1, CQ::rational(1, 2))),
            ),
        ];
        for (r1, r2) in pairs {
            let forward = rs_lfactor(&r1, &r2).unwrap();
            let dualized = rs_lfactor(&r1.dual(), &r2.dual()).unwrap();
            let expected = tensor(&to_wd(&r1).unwrap(), &to_wd(&r2).unwrap())
                .unwrap()
                .dual()
                .lfactor();
            assert_eq!(dualized.lfactor, expected);
            // sanity: the forward factor agrees with the tensor route too
            assert_eq!(
                forward.lfactor,
                tensor(&to_wd(&r1).unwrap(), &to_wd(&r2).unwrap())
                    .unwrap()
                    .lfactor()
            );
        }
    }

    #[test]
    fn rs_symmetry() {
        let reps = vec![
            single(st(qq(-1, 2), 3)),
            single(st(qq(1, 2), 1)),
            RepProduct::new(vec![st(qq(0, 1), 2), st(qq(-3, 2), 1)]).unwrap(),
        ];
        for a in &reps {
            for b in &reps {
                assert_eq!(
                    rs_lfactor(a, b).unwrap().lfactor,
                    rs_lfactor(b, a).unwrap().lfactor
                );
            }
        }
    }

    #[test]
    fn gj_agrees_with_wd_route() {
        let reps = vec![
            single(chi_r(1, CQ::rational(-1, 2))),
            single(ind_r(2, CQ::rational(1, 2))),
            RepProduct::new(vec![st(qq(-1, 2), 2), st(qq(1, 2), 1)]).unwrap(),
        ];
        for rep in reps {
            assert_eq!(gj_lfactor(&rep), to_wd(&rep).unwrap().lfactor());
        }
    }

    #[test]
    fn opaque_pairs_degrade_to_one() {
        let opaque =
            single(Block::segment(NonArchCuspidal::opaque(2, QQ::zero()).unwrap(), 2).unwrap());
        let st1 = single(st(qq(-1, 2), 1));
        let rs = rs_lfactor(&opaque, &st1).unwrap();
        assert!(rs.lfactor.is_one());
        assert!(rs.opaque_degraded);
        let clean = rs_lfactor(&st1, &st1).unwrap();
        assert!(!clean.opaque_degraded);
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = single(chi_r(0, CQ::zero()));
        let na = single(st(QQ::zero(), 1));
        assert!(matches!(
            rs_lfactor(&r, &na),
            Err(TensorError::MixedFields(_, _))
        ));
        let c = WDIndec::CDim1 {
            m: 0,
            r: CQ::zero(),
        };
        let rr = WDIndec::RDim1 {
            m: 0,
            r: CQ::zero(),
        };
        assert!(tensor_indec(&c, &rr).is_err());
    }
}
