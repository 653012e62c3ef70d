//! Formal L-factors: multisets of gamma and Euler atoms with exact
//! pole-order queries.
//!
//! An [`Atom`] is one of
//!
//! - `GammaR { mu }`:  π^{-(s+μ)/2} Γ((s+μ)/2), poles where s+μ ∈ {0, -2, -4, ...}
//! - `GammaC { mu }`:  2 (2π)^{-(s+μ)} Γ(s+μ), poles where s+μ ∈ {0, -1, -2, ...}
//! - `Euler { c, zeta }`:  (1 - ζ q^{-(s+c)})^{-1}, a simple pole at s = -c when ζ = 1
//!
//! Atoms store the total shift μ rather than the original character data,
//! so equality of L-factors is equality of shifted gamma families. Local
//! L-factors have no zeros, so pole orders add under multiplication.
//! Pole queries are restricted to real rational points; atoms with a
//! nonzero imaginary shift never contribute there.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::params::{ArchField, Block, NonArchCuspidal, RepProduct};
use crate::rational::{RootOfUnity, CQ, QQ};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Atom {
    GammaR { mu: CQ },
    GammaC { mu: CQ },
    Euler { c: QQ, zeta: RootOfUnity },
}

impl Atom {
    pub fn gamma_r(mu: CQ) -> Self {
        Atom::GammaR { mu }
    }

    pub fn gamma_c(mu: CQ) -> Self {
        Atom::GammaC { mu }
    }

    pub fn euler(c: QQ, zeta: RootOfUnity) -> Self {
        Atom::Euler { c, zeta }
    }

    /// Euler atom with trivial finite-order part.
    pub fn euler_trivial(c: QQ) -> Self {
        Atom::Euler {
            c,
            zeta: RootOfUnity::one(),
        }
    }

    /// Replace s by s + t.
    pub fn shift(&self, t: &QQ) -> Atom {
        match self {
            Atom::GammaR { mu } => Atom::GammaR { mu: mu.shift_re(t) },
            Atom::GammaC { mu } => Atom::GammaC { mu: mu.shift_re(t) },
            Atom::Euler { c, zeta } => Atom::Euler {
                c: c + t,
                zeta: zeta.clone(),
            },
        }
    }

    /// Whether the atom has a pole at the real rational point s₀, and its
    /// order there (poles of these atoms are always simple).
    pub fn has_pole_at(&self, s0: &QQ) -> bool {
        match self {
            Atom::GammaR { mu } => mu.im.is_zero() && (s0 + &mu.re).is_nonpositive_even_integer(),
            Atom::GammaC { mu } => mu.im.is_zero() && (s0 + &mu.re).is_nonpositive_integer(),
            Atom::Euler { c, zeta } => zeta.is_trivial() && (s0 + c).is_zero(),
        }
    }

    /// All real poles of the atom inside the closed window [lo, hi].
    pub fn poles_in_window(&self, lo: &QQ, hi: &QQ) -> Vec<QQ> {
        let mut out = Vec::new();
        match self {
            Atom::GammaR { mu } if mu.im.is_zero() => {
                // poles at s = -mu - 2k, k >= 0
                let mut s = -&mu.re;
                while &s >= lo {
                    if &s <= hi && (&s + &mu.re).is_nonpositive_even_integer() {
                        out.push(s.clone());
                    }
                    s = s - QQ::from_int(2);
                }
            }
            Atom::GammaC { mu } if mu.im.is_zero() => {
                let mut s = -&mu.re;
                while &s >= lo {
                    if &s <= hi {
                        out.push(s.clone());
                    }
                    s = s - QQ::one();
                }
            }
            Atom::Euler { c, zeta } if zeta.is_trivial() => {
                let s = -c;
                if &s >= lo && &s <= hi {
                    out.push(s);
                }
            }
            _ => {}
        }
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn arg(shift: &CQ) -> String {
            if shift.re.is_zero() && shift.im.is_zero() {
                "s".to_string()
            } else if shift.im.is_zero() {
                if shift.re.is_negative() {
                    format!("s-{}", -&shift.re)
                } else {
                    format!("s+{}", shift.re)
                }
            } else {
                format!("s+({})", shift)
            }
        }
        match self {
            Atom::GammaR { mu } => write!(f, "Gamma_R({})", arg(mu)),
            Atom::GammaC { mu } => write!(f, "Gamma_C({})", arg(mu)),
            Atom::Euler { c, zeta } if zeta.is_trivial() => {
                write!(f, "Euler({})", arg(&CQ::real(c.clone())))
            }
            Atom::Euler { c, zeta } => {
                write!(f, "Euler({};zeta={})", arg(&CQ::real(c.clone())), zeta)
            }
        }
    }
}

/// A formal product of atoms with positive multiplicities. The empty
/// product is the constant function 1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LFactor {
    atoms: BTreeMap<Atom, u64>,
}

impl LFactor {
    /// The constant function 1.
    pub fn one() -> Self {
        LFactor::default()
    }

    pub fn from_atom(atom: Atom) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(atom, 1);
        LFactor { atoms }
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, atom: Atom) {
        *self.atoms.entry(atom).or_insert(0) += 1;
    }

    pub fn push_with_multiplicity(&mut self, atom: Atom, mult: u64) {
        if mult > 0 {
            *self.atoms.entry(atom).or_insert(0) += mult;
        }
    }

    /// Multiset union with multiplicity addition. Commutative and
    /// associative with unit [`LFactor::one`].
    pub fn multiply(&self, other: &LFactor) -> LFactor {
        let mut out = self.clone();
        for (atom, mult) in &other.atoms {
            out.push_with_multiplicity(atom.clone(), *mult);
        }
        out
    }

    /// Replace s by s + t in every atom.
    pub fn shift(&self, t: &QQ) -> LFactor {
        let mut out = LFactor::one();
        for (atom, mult) in &self.atoms {
            out.push_with_multiplicity(atom.shift(t), *mult);
        }
        out
    }

    /// Order of the pole at the real rational point s₀ together with the
    /// contributing atoms and their multiplicities. Orders add across the
    /// product; local L-factors have no zeros to cancel them.
    pub fn pole_order(&self, s0: &QQ) -> (u64, Vec<(Atom, u64)>) {
        let mut order = 0;
        let mut contributors = Vec::new();
        for (atom, mult) in &self.atoms {
            if atom.has_pole_at(s0) {
                order += *mult;
                contributors.push((atom.clone(), *mult));
            }
        }
        (order, contributors)
    }

    /// Just the order of the pole at s₀.
    pub fn pole_order_at(&self, s0: &QQ) -> u64 {
        self.pole_order(s0).0
    }

    /// All real poles in [lo, hi] with their orders, ascending in s.
    pub fn poles_in_window(&self, lo: &QQ, hi: &QQ) -> Vec<(QQ, u64)> {
        let mut acc: BTreeMap<QQ, u64> = BTreeMap::new();
        for (atom, mult) in &self.atoms {
            for s in atom.poles_in_window(lo, hi) {
                *acc.entry(s).or_insert(0) += *mult;
            }
        }
        acc.into_iter().collect()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, u64)> {
        self.atoms.iter().map(|(a, m)| (a, *m))
    }

    pub fn atom_count(&self) -> u64 {
        self.atoms.values().sum()
    }

    /// Apply a map to every atom, keeping multiplicities.
    pub fn map_atoms(&self, f: impl Fn(&Atom) -> Atom) -> LFactor {
        let mut out = LFactor::one();
        for (atom, mult) in &self.atoms {
            out.push_with_multiplicity(f(atom), *mult);
        }
        out
    }
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        for (i, (atom, mult)) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}", atom)?;
            if *mult > 1 {
                write!(f, "^{}", mult)?;
            }
        }
        Ok(())
    }
}

/// Standard L-factor of a single block.
///
/// Real character: Gamma_R(s+m+r). Complex character: Gamma_C(s+r+|m|/2).
/// Induced parameter over ℝ: Gamma_C(s+r+m/2). Unramified segment: the
/// Euler factor of the top-end character (the L-factor of a generalized
/// Steinberg equals the L-factor of its cuspidal support's top end).
/// Ramified and opaque segments contribute 1.
pub fn gj_block(block: &Block) -> LFactor {
    match block {
        Block::Char(ch) => {
            let shift = match ch.field {
                ArchField::Real => QQ::from_int(ch.m),
                ArchField::Complex => QQ::new(ch.m.abs(), 2),
            };
            let mu = ch.r.shift_re(&shift);
            match ch.field {
                ArchField::Real => LFactor::from_atom(Atom::gamma_r(mu)),
                ArchField::Complex => LFactor::from_atom(Atom::gamma_c(mu)),
            }
        }
        Block::Induced(ind) => {
            let mu = ind.r.shift_re(&QQ::new(ind.m.abs(), 2));
            LFactor::from_atom(Atom::gamma_c(mu))
        }
        Block::Segment { base, .. } => match base {
            NonArchCuspidal::Unramified { c, zeta } => {
                LFactor::from_atom(Atom::euler(c.clone(), zeta.clone()))
            }
            NonArchCuspidal::Ramified | NonArchCuspidal::Opaque { .. } => LFactor::one(),
        },
    }
}

/// Standard (Godement-Jacquet) L-factor of a product: the product of the
/// per-block factors.
pub fn gj_lfactor(rep: &RepProduct) -> LFactor {
    let mut out = LFactor::one();
    for b in rep.blocks() {
        out = out.multiply(&gj_block(b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ArchChar;

    fn qq(n: i64, d: i64) -> QQ {
        QQ::new(n, d)
    }

    fn gr(n: i64, d: i64) -> Atom {
        Atom::gamma_r(CQ::rational(n, d))
    }

    fn gc(n: i64, d: i64) -> Atom {
        Atom::gamma_c(CQ::rational(n, d))
    }

    fn eu(n: i64, d: i64) -> Atom {
        Atom::euler_trivial(qq(n, d))
    }

    #[test]
    fn euler_pole() {
        assert!(eu(-1, 2).has_pole_at(&qq(1, 2)));
        assert!(!eu(-1, 2).has_pole_at(&QQ::one()));
        // nontrivial finite-order part kills the pole: q is formal
        let twisted = Atom::euler(qq(-1, 2), RootOfUnity::minus_one());
        assert!(!twisted.has_pole_at(&qq(1, 2)));
    }

    #[test]
    fn gamma_r_pole_lattice() {
        assert_eq!(LFactor::from_atom(gr(-1, 2)).pole_order_at(&qq(1, 2)), 1);
        assert_eq!(LFactor::from_atom(gr(1, 2)).pole_order_at(&qq(1, 2)), 0);
        // s + mu = -1 is not in the even lattice
        assert!(!gr(-3, 2).has_pole_at(&qq(1, 2)));
        assert!(gr(-5, 2).has_pole_at(&qq(1, 2)));
        // imaginary shift never contributes at real points
        let off_axis = Atom::gamma_r(CQ::new(qq(-1, 2), QQ::one()));
        assert!(!off_axis.has_pole_at(&qq(1, 2)));
    }

    #[test]
    fn gamma_c_pole_lattice() {
        assert_eq!(LFactor::from_atom(gc(3, 2)).pole_order_at(&QQ::one()), 0);
        assert!(gc(-1, 1).has_pole_at(&QQ::one()));
        assert!(gc(-2, 1).has_pole_at(&QQ::one()));
        assert!(!gc(-3, 2).has_pole_at(&QQ::one()));
    }

    #[test]
    fn pole_orders_add() {
        // oracle: count the atoms satisfying the Gamma_R pole condition
        let mut l = LFactor::one();
        l.push(gr(-5, 2));
        l.push(gr(-5, 2));
        let (order, contributors) = l.pole_order(&qq(1, 2));
        assert_eq!(order, 2);
        assert_eq!(contributors, vec![(gr(-5, 2), 2)]);
    }

    #[test]
    fn multiply_is_multiset_union() {
        let a = LFactor::from_atom(gr(0, 1));
        assert_eq!(LFactor::one().multiply(&a), a);
        let sq = a.multiply(&a);
        assert_eq!(sq.atoms().next(), Some((&gr(0, 1), 2)));
        assert_eq!(sq.pole_order_at(&QQ::zero()), 2);
    }

    #[test]
    fn shift_moves_atoms() {
        assert_eq!(
            LFactor::from_atom(eu(-2, 1)).shift(&QQ::one()),
            LFactor::from_atom(eu(-1, 1))
        );
        assert_eq!(
            LFactor::from_atom(gr(-1, 2)).shift(&QQ::one()),
            LFactor::from_atom(gr(1, 2))
        );
        let l = LFactor::from_atom(gc(1, 4)).multiply(&LFactor::from_atom(eu(0, 1)));
        assert_eq!(l.shift(&qq(1, 2)).shift(&qq(1, 3)), l.shift(&qq(5, 6)));
        // pole set translates
        assert_eq!(
            l.shift(&qq(3, 4)).pole_order_at(&qq(-3, 4)),
            l.pole_order_at(&QQ::zero())
        );
    }

    #[test]
    fn gj_closed_forms() {
        // real character
        let b = Block::Char(ArchChar::real(1, CQ::rational(-1, 2)).unwrap());
        assert_eq!(gj_block(&b), LFactor::from_atom(gr(1, 2)));
        // unramified segment of any length keeps the top-end Euler factor
        let seg = Block::steinberg(qq(-1, 2), 3).unwrap();
        assert_eq!(gj_block(&seg), LFactor::from_atom(eu(-1, 2)));
        // ramified segment has factor 1
        let ram = Block::segment(NonArchCuspidal::Ramified, 2).unwrap();
        assert!(gj_block(&ram).is_one());
        // complex character uses |m|
        let c = Block::Char(ArchChar::complex(-3, CQ::zero()));
        assert_eq!(gj_block(&c), LFactor::from_atom(gc(3, 2)));
    }

    #[test]
    fn gj_of_product_multiplies() {
        let rep = RepProduct::new(vec![
            Block::Char(ArchChar::real(0, CQ::rational(-1, 2)).unwrap()),
            Block::Char(ArchChar::real(0, CQ::rational(1, 2)).unwrap()),
        ])
        .unwrap();
        let expected = LFactor::from_atom(gr(-1, 2)).multiply(&LFactor::from_atom(gr(1, 2)));
        assert_eq!(gj_lfactor(&rep), expected);
        // block decomposition is exact
        let blockwise = rep
            .blocks()
            .iter()
            .fold(LFactor::one(), |acc, b| acc.multiply(&gj_block(b)));
        assert_eq!(gj_lfactor(&rep), blockwise);
    }

    #[test]
    fn gj_dual_negates_continuous_exponent() {
        // Gamma_R(s+m+r) becomes Gamma_R(s+m-r) under dual
        for (m, r) in [(0i64, qq(1, 2)), (1, qq(-3, 2)), (1, qq(0, 1))] {
            let b = Block::Char(ArchChar::real(m, CQ::real(r.clone())).unwrap());
            let mu_dual = CQ::real(&QQ::from_int(m) - &r);
            assert_eq!(
                gj_block(&b.dual()),
                LFactor::from_atom(Atom::gamma_r(mu_dual))
            );
        }
    }

    #[test]
    fn duplication_pole_sets_match() {
        // Gamma_R(s+mu) Gamma_R(s+mu+1) has the pole set of Gamma_C(s+mu)
        let window = crate::rational::rationals_in_window(4, &QQ::from_int(-10), &QQ::from_int(10));
        for mu_num in [-5i64, -2, -1, 0, 1, 3] {
            for mu_den in [1i64, 2] {
                let mu = qq(mu_num, mu_den);
                let pair = LFactor::from_atom(Atom::gamma_r(CQ::real(mu.clone()))).multiply(
                    &LFactor::from_atom(Atom::gamma_r(CQ::real(&mu + &QQ::one()))),
                );
                let gc = LFactor::from_atom(Atom::gamma_c(CQ::real(mu.clone())));
                for s0 in &window {
                    assert_eq!(
                        pair.pole_order_at(s0),
                        gc.pole_order_at(s0),
                        "mu = {mu}, s0 = {s0}"
                    );
                }
                assert_eq!(
                    pair.poles_in_window(&QQ::from_int(-10), &QQ::from_int(10)),
                    gc.poles_in_window(&QQ::from_int(-10), &QQ::from_int(10))
                );
            }
        }
    }

    #[test]
    fn window_pole_listing() {
        let l = LFactor::from_atom(gr(-1, 1)); // poles at 1, -1, -3, ...
        let poles = l.poles_in_window(&QQ::from_int(-4), &QQ::from_int(4));
        assert_eq!(
            poles,
            vec![
                (QQ::from_int(-3), 1),
                (QQ::from_int(-1), 1),
                (QQ::from_int(1), 1)
            ]
        );
        let e = LFactor::from_atom(eu(-1, 1));
        assert_eq!(
            e.poles_in_window(&QQ::from_int(-10), &QQ::from_int(10)),
            vec![(QQ::from_int(1), 1)]
        );
    }

    #[test]
    fn atom_display() {
        assert_eq!(gr(0, 1).to_string(), "Gamma_R(s)");
        assert_eq!(gr(-1, 2).to_string(), "Gamma_R(s-1/2)");
        assert_eq!(gc(3, 2).to_string(), "Gamma_C(s+3/2)");
        assert_eq!(eu(-1, 1).to_string(), "Euler(s-1)");
        assert_eq!(
            Atom::euler(QQ::zero(), RootOfUnity::minus_one()).to_string(),
            "Euler(s;zeta=1/2)"
        );
        assert_eq!(LFactor::one().to_string(), "1");
        let sq = LFactor::from_atom(gr(0, 1)).multiply(&LFactor::from_atom(gr(0, 1)));
        assert_eq!(sq.to_string(), "Gamma_R(s)^2");
    }

    #[test]
    fn atom_json_roundtrip() {
        for atom in [
            gr(-1, 2),
            gc(3, 4),
            Atom::euler(qq(-1, 2), RootOfUnity::minus_one()),
        ] {
            let s = serde_json::to_string(&atom).unwrap();
            let back: Atom = serde_json::from_str(&s).unwrap();
            assert_eq!(back, atom);
        }
        let s = serde_json::to_string(&gr(-1, 2)).unwrap();
        assert_eq!(s, r#"{"kind":"gamma_r","mu":{"re":"-1/2","im":"0"}}"#);
    }
}
