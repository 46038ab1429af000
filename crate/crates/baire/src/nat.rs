//! Natural numbers as digits of Baire space.
//!
//! Word codes grow doubly exponentially in the word length (the code of a
//! word of length 16 has roughly 2^16 bits), and names list pairs of such
//! codes. A flat bignum would make every history digit of a game or every
//! graph pair of a nested name prohibitively large, so a [`Nat`] that does
//! not fit in a `u64` is stored as its Cantor decomposition `⟨l, r⟩`. Pairing
//! and unpairing are then O(1), and successor/predecessor are memoised on
//! each node so that word coding stays linear in the word length.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

/// Cantor pairing on machine words, `None` when the result leaves `u64`.
pub fn pair_u64(n: u64, k: u64) -> Option<u64> {
    let s = n as u128 + k as u128;
    let t = s.checked_mul(s + 1)? / 2 + k as u128;
    u64::try_from(t).ok()
}

/// Inverse of the Cantor pairing on `u128` values.
pub fn unpair_u128(m: u128) -> (u128, u128) {
    let w = ((8 * m + 1).sqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let k = m - t;
    (w - k, k)
}

pub fn unpair_u64(m: u64) -> (u64, u64) {
    let (n, k) = unpair_u128(m as u128);
    (n as u64, k as u64)
}

#[derive(Clone)]
pub struct Nat(Repr);

#[derive(Clone)]
enum Repr {
    Small(u64),
    Big(Arc<Node>),
}

struct Node {
    left: Nat,
    right: Nat,
    hash: u64,
    succ: OnceLock<Nat>,
    pred: OnceLock<Nat>,
}

pub(crate) fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.rotate_left(29).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Nat {
    pub const ZERO: Nat = Nat(Repr::Small(0));

    pub fn small(v: u64) -> Nat {
        Nat(Repr::Small(v))
    }

    fn big(left: Nat, right: Nat) -> Nat {
        let hash = mix(mix(0xb16, left.hash64()), right.hash64());
        Nat(Repr::Big(Arc::new(Node {
            left,
            right,
            hash,
            succ: OnceLock::new(),
            pred: OnceLock::new(),
        })))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_u64().and_then(|v| usize::try_from(v).ok())
    }

    pub fn hash64(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => mix(0x5a11, *v),
            Repr::Big(node) => node.hash,
        }
    }

    /// `⟨n, k⟩ = ½(n+k)(n+k+1)+k`.
    pub fn pair(n: &Nat, k: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&n.0, &k.0) {
            if let Some(v) = pair_u64(*a, *b) {
                return Nat::small(v);
            }
        }
        Nat::big(n.clone(), k.clone())
    }

    pub fn unpair(&self) -> (Nat, Nat) {
        match &self.0 {
            Repr::Small(v) => {
                let (n, k) = unpair_u64(*v);
                (Nat::small(n), Nat::small(k))
            }
            Repr::Big(node) => (node.left.clone(), node.right.clone()),
        }
    }

    pub fn succ(&self) -> Nat {
        match &self.0 {
            Repr::Small(v) if *v < u64::MAX => Nat::small(v + 1),
            Repr::Small(_) => {
                let (n, k) = unpair_u128(u64::MAX as u128 + 1);
                Nat::big(Nat::small(n as u64), Nat::small(k as u64))
            }
            Repr::Big(node) => node
                .succ
                .get_or_init(|| {
                    let next = if node.left.is_zero() {
                        Nat::big(node.right.succ(), Nat::ZERO)
                    } else {
                        Nat::big(node.left.pred().expect("nonzero"), node.right.succ())
                    };
                    if let Repr::Big(n) = &next.0 {
                        let _ = n.pred.set(self.clone());
                    }
                    next
                })
                .clone(),
        }
    }

    pub fn pred(&self) -> Option<Nat> {
        match &self.0 {
            Repr::Small(0) => None,
            Repr::Small(v) => Some(Nat::small(v - 1)),
            Repr::Big(node) => Some(
                node.pred
                    .get_or_init(|| {
                        let prev = if node.right.is_zero() {
                            Nat::pair(&Nat::ZERO, &node.left.pred().expect("nonzero"))
                        } else {
                            Nat::pair(&node.left.succ(), &node.right.pred().expect("nonzero"))
                        };
                        if let Repr::Big(n) = &prev.0 {
                            let _ = n.succ.set(self.clone());
                        }
                        prev
                    })
                    .clone(),
            ),
        }
    }

    pub fn add_small(&self, k: u64) -> Nat {
        match &self.0 {
            Repr::Small(v) if v.checked_add(k).is_some() => Nat::small(v + k),
            _ => Nat::from_biguint(&(self.to_biguint() + BigUint::from(k))),
        }
    }

    /// Value as an ordinary bignum. Exponential in the tree height, meant for
    /// digits of moderate size (arithmetic digit maps, display).
    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(node) => {
                let n = node.left.to_biguint();
                let k = node.right.to_biguint();
                let s = &n + &k;
                (&s * (&s + BigUint::one())) / BigUint::from(2u8) + k
            }
        }
    }

    pub fn from_biguint(v: &BigUint) -> Nat {
        if let Some(x) = v.to_u64() {
            return Nat::small(x);
        }
        let w = ((v * BigUint::from(8u8) + BigUint::one()).sqrt() - BigUint::one()) / BigUint::from(2u8);
        let t = &w * (&w + BigUint::one()) / BigUint::from(2u8);
        let k = v - t;
        let n = &w - &k;
        Nat::big(Nat::from_biguint(&n), Nat::from_biguint(&k))
    }

    /// Remainder modulo a small modulus, computed on the tree.
    pub fn rem_small(&self, m: u64) -> u64 {
        assert!(m > 0, "modulus must be positive");
        match &self.0 {
            Repr::Small(v) => v % m,
            Repr::Big(node) => {
                let m2 = 2 * m as u128;
                let n = node.left.rem_small(2 * m) as u128;
                let k = node.right.rem_small(2 * m) as u128;
                let s = (n + k) % m2;
                let tri = (s * ((s + 1) % m2) % m2) / 2;
                ((tri + k) % m as u128) as u64
            }
        }
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Nat {
        Nat::small(v)
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::ZERO
    }
}

impl PartialEq for Nat {
    fn eq(&self, other: &Nat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => {
                Arc::ptr_eq(a, b) || (a.hash == b.hash && a.left == b.left && a.right == b.right)
            }
            _ => false,
        }
    }
}

impl Eq for Nat {}

impl PartialEq<u64> for Nat {
    fn eq(&self, other: &u64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl Hash for Nat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash64());
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(node) => write!(f, "<{},{}>", node.left, node.right),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Small values serialize as JSON numbers, larger ones as their Cantor
// decomposition `[n, k]`, which is canonical and therefore round-trips
// bit-exactly.
impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => s.serialize_u64(*v),
            Repr::Big(node) => {
                let mut t = s.serialize_tuple(2)?;
                t.serialize_element(&node.left)?;
                t.serialize_element(&node.right)?;
                t.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Nat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a natural number or a pair [n, k]")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::small(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Nat, E> {
                u64::try_from(v)
                    .map(Nat::small)
                    .map_err(|_| E::custom("negative digit"))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Nat, A::Error> {
                let n: Nat = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let k: Nat = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<Nat>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Nat::pair(&n, &k))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pairs() {
        assert_eq!(pair_u64(0, 0), Some(0));
        assert_eq!(pair_u64(0, 1), Some(2));
        assert_eq!(unpair_u64(5), (0, 2));
        assert_eq!(unpair_u64(1), (1, 0));
    }

    #[test]
    fn crosses_u64_boundary() {
        let max = Nat::small(u64::MAX);
        let next = max.succ();
        assert!(next.to_u64().is_none());
        assert_eq!(next.pred().unwrap(), max);
        assert_eq!(next.to_biguint(), BigUint::from(u64::MAX) + BigUint::one());
        assert_eq!(Nat::from_biguint(&next.to_biguint()), next);
    }

    #[test]
    fn big_succ_pred_agree_with_bignum() {
        let mut n = Nat::from_biguint(&(BigUint::from(u64::MAX) * BigUint::from(3u8)));
        let mut b = n.to_biguint();
        for _ in 0..200 {
            n = n.succ();
            b += BigUint::one();
            assert_eq!(n.to_biguint(), b);
        }
        for _ in 0..400 {
            n = n.pred().unwrap();
            b -= BigUint::one();
            assert_eq!(n.to_biguint(), b);
            assert_eq!(Nat::from_biguint(&b), n);
        }
    }

    #[test]
    fn rem_matches_bignum() {
        let a = Nat::pair(&Nat::small(u64::MAX), &Nat::small(12345));
        let b = Nat::pair(&a, &Nat::small(7));
        for m in 1..20u64 {
            for x in [&a, &b] {
                let want = (x.to_biguint() % BigUint::from(m)).to_u64().unwrap();
                assert_eq!(x.rem_small(m), want);
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let a = Nat::pair(&Nat::small(u64::MAX), &Nat::small(3));
        let s = serde_json::to_string(&a).unwrap();
        let back: Nat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
