//! Gödel's β-function and the sequence coding built on it.
//!
//! `β(b, c, i) = b mod (1 + (i+1)·c)`. For a sequence `s` of length `k`, take
//! `l = max(k, s_0, ..., s_{k-1})` and `c = l!`. The moduli `1 + (i+1)·c`
//! for `i < k` are pairwise coprime (a common prime factor would divide
//! `(j-i)·c` and hence `c`), and each exceeds every `s_i`, so the Chinese
//! Remainder Theorem yields a `b` with `β(b, c, i) = s_i`. We always return
//! the least such `b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Nat;

/// A pair `(b, c)` plus the number of terms it was built to reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCode {
    pub b: Nat,
    pub c: Nat,
    pub length: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BetaError {
    #[error("moduli {left} (#{i}) and {right} (#{j}) share the factor {gcd}")]
    NotCoprime {
        i: usize,
        j: usize,
        left: Nat,
        right: Nat,
        gcd: Nat,
    },
    #[error("residue {residue} is not below its modulus {modulus} (congruence #{index})")]
    ResidueTooLarge {
        index: usize,
        residue: Nat,
        modulus: Nat,
    },
    #[error("cannot encode an empty sequence")]
    EmptySequence,
    #[error("factorial base {0} is too large to materialize")]
    TooLarge(Nat),
}

/// Remainder of `b` divided by `1 + (i+1)·c`.
pub fn beta(b: &Nat, c: &Nat, i: &Nat) -> Nat {
    b % modulus(c, i)
}

fn modulus(c: &Nat, i: &Nat) -> Nat {
    Nat::one() + (i + 1u32) * c
}

/// `[1 + (i+1)·c for i in 0..n]`.
pub fn moduli(c: &Nat, n: usize) -> Vec<Nat> {
    (0..n).map(|i| modulus(c, &Nat::from(i))).collect()
}

pub fn factorial(n: u64) -> Nat {
    (2..=n).fold(Nat::one(), |acc, k| acc * k)
}

/// Least `x` with `x ≡ r_i (mod m_i)` for every `(r_i, m_i)`.
///
/// Congruences are merged pairwise; each merge solves
/// `x + M·t ≡ r (mod m)` with the inverse of `M` modulo `m` from the
/// extended Euclidean algorithm.
pub fn crt_solve(congruences: &[(Nat, Nat)]) -> Result<Nat, BetaError> {
    for (index, (residue, modulus)) in congruences.iter().enumerate() {
        if residue >= modulus {
            return Err(BetaError::ResidueTooLarge {
                index,
                residue: residue.clone(),
                modulus: modulus.clone(),
            });
        }
    }
    for (i, (_, left)) in congruences.iter().enumerate() {
        for (j, (_, right)) in congruences.iter().enumerate().skip(i + 1) {
            let gcd = left.gcd(right);
            if !gcd.is_one() {
                return Err(BetaError::NotCoprime {
                    i,
                    j,
                    left: left.clone(),
                    right: right.clone(),
                    gcd,
                });
            }
        }
    }

    let mut x = Nat::zero();
    let mut product = Nat::one();
    for (residue, modulus) in congruences {
        // t = (r - x) * product^{-1}  (mod m)
        let m = BigInt::from(modulus.clone());
        let inverse = mod_inverse(&BigInt::from(&product % modulus), &m);
        let diff = (BigInt::from(residue.clone()) - BigInt::from(&x % modulus)).mod_floor(&m);
        let t = (diff * inverse)
            .mod_floor(&m)
            .to_biguint()
            .expect("mod_floor by a positive modulus is non-negative");
        x += &product * t;
        product *= modulus;
    }
    Ok(x)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let egcd = a.extended_gcd(m);
    debug_assert!(egcd.gcd.is_one());
    let inv = egcd.x.mod_floor(m);
    debug_assert!(!inv.is_negative());
    inv
}

/// Encodes a non-empty sequence as the least `b` together with `c = l!`.
pub fn encode_sequence(seq: &[Nat]) -> Result<BetaCode, BetaError> {
    if seq.is_empty() {
        return Err(BetaError::EmptySequence);
    }
    let l = seq
        .iter()
        .cloned()
        .chain(std::iter::once(Nat::from(seq.len())))
        .max()
        .expect("non-empty");
    let l_small = l.to_u64().ok_or_else(|| BetaError::TooLarge(l.clone()))?;
    let c = factorial(l_small);
    let congruences: Vec<(Nat, Nat)> = seq.iter().cloned().zip(moduli(&c, seq.len())).collect();
    let b = crt_solve(&congruences)?;
    Ok(BetaCode {
        b,
        c,
        length: seq.len(),
    })
}

/// `β(code.b, code.c, i)`; meaningful for `i < code.length`.
pub fn decode(code: &BetaCode, i: usize) -> Nat {
    beta(&code.b, &code.c, &Nat::from(i))
}

impl BetaCode {
    /// All encoded terms.
    pub fn values(&self) -> Vec<Nat> {
        (0..self.length).map(|i| decode(self, i)).collect()
    }
}
