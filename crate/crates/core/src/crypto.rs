//! Block encryption, signatures and key agreement with the maps `g^_i`.
//! Block 0 is fixed by every key.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lazy_tree::LazyKey;
use crate::permutation::Permutation;
use crate::solution::Solution;

/// Largest block in text mode (`Z`).
pub const TEXT_MAX_BLOCK: u32 = 26;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockCode(pub Vec<BigUint>);

impl BlockCode {
    pub fn blocks(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space-separated decimal blocks, each left-padded with zeros to `width`.
    pub fn render(&self, width: usize) -> String {
        self.0
            .iter()
            .map(|b| format!("{:0>width$}", b.to_string()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(1))
    }
}

impl FromStr for BlockCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                BigUint::from_str(tok).map_err(|_| Error::Parse(format!("bad block {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(BlockCode)
    }
}

impl From<Vec<u64>> for BlockCode {
    fn from(v: Vec<u64>) -> Self {
        BlockCode(v.into_iter().map(BigUint::from).collect())
    }
}

/// One block per character: blank is 0, `A` is 1, ..., `Z` is 26.
pub fn encode_text(text: &str) -> Result<BlockCode> {
    text.chars()
        .map(|c| match c.to_ascii_uppercase() {
            ' ' => Ok(BigUint::zero()),
            u @ 'A'..='Z' => Ok(BigUint::from(u as u32 - 'A' as u32 + 1)),
            _ => Err(Error::UnsupportedChar(c)),
        })
        .collect::<Result<Vec<_>>>()
        .map(BlockCode)
}

pub fn decode_text(code: &BlockCode) -> Result<String> {
    code.0
        .iter()
        .map(|b| match b.to_u32() {
            Some(0) => Ok(' '),
            Some(v) if v <= TEXT_MAX_BLOCK => Ok(char::from(b'A' + (v - 1) as u8)),
            _ => Err(Error::BlockOutOfRange {
                block: b.to_string(),
                max: TEXT_MAX_BLOCK.to_string(),
            }),
        })
        .collect()
}

fn map_blocks(code: &BlockCode, key: &LazyKey, f: impl Fn(&LazyKey, &BigUint) -> Result<BigUint>) -> Result<BlockCode> {
    code.0
        .iter()
        .map(|b| {
            if b.is_zero() {
                Ok(BigUint::zero())
            } else if b > key.size() {
                Err(Error::BlockOutOfRange {
                    block: b.to_string(),
                    max: key.size().to_string(),
                })
            } else {
                f(key, b)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(BlockCode)
}

/// Applies `g^_i` to every block.
pub fn encrypt(code: &BlockCode, key: &LazyKey) -> Result<BlockCode> {
    map_blocks(code, key, LazyKey::eval)
}

/// Applies `g^_i^{-1}` to every block.
pub fn decrypt(code: &BlockCode, key: &LazyKey) -> Result<BlockCode> {
    map_blocks(code, key, LazyKey::eval_inverse)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTrace {
    /// `g^_j^{-1}(M)`, computed with the sender's key.
    pub intermediate: BlockCode,
    /// `g^_i` applied to the intermediate blocks.
    pub transmitted: BlockCode,
}

/// Signs with the sender's key `j`, then encrypts for the receiver's key `i`.
pub fn sign(code: &BlockCode, sender: &LazyKey, receiver: &LazyKey) -> Result<SignatureTrace> {
    let intermediate = decrypt(code, sender)?;
    let transmitted = encrypt(&intermediate, receiver)?;
    Ok(SignatureTrace {
        intermediate,
        transmitted,
    })
}

/// Decrypts with the receiver's key, then applies the sender's key.
pub fn open_signature(code: &BlockCode, receiver: &LazyKey, sender: &LazyKey) -> Result<BlockCode> {
    encrypt(&decrypt(code, receiver)?, sender)
}

/// `outer ∘ inner`: `inner` is applied first.
#[derive(Debug, Clone)]
pub struct ComposedKey {
    pub outer: LazyKey,
    pub inner: LazyKey,
}

impl ComposedKey {
    pub fn eval(&self, m: &BigUint) -> Result<BigUint> {
        self.outer.eval(&self.inner.eval(m)?)
    }

    pub fn materialize(&self, bound: usize) -> Result<Permutation> {
        let (outer, _) = self.outer.build_permutation(bound)?;
        let (inner, _) = self.inner.build_permutation(bound)?;
        outer.compose(&inner)
    }

    /// `g^_a g^_b` with the two labels.
    pub fn describe(&self) -> String {
        format!("g^_{} g^_{}", self.outer.tree().root(), self.inner.tree().root())
    }

    /// Pointwise comparison on `points`.
    pub fn agrees_on<'a>(&self, other: &ComposedKey, points: impl IntoIterator<Item = &'a BigUint>) -> Result<bool> {
        for m in points {
            if self.eval(m)? != other.eval(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone)]
pub struct KeyExchange {
    /// `g^_i(j)`, sent by Bob.
    pub bob_sends: BigUint,
    /// `g^_i(l)`, sent by Alice.
    pub alice_sends: BigUint,
    /// `g^_l ∘ g^_{g^_l^{-1}(j)}`.
    pub bob_key: ComposedKey,
    /// `g^_j ∘ g^_{g^_j^{-1}(l)}`.
    pub alice_key: ComposedKey,
}

impl KeyExchange {
    pub fn transcript(&self) -> Vec<String> {
        vec![
            format!("bob→alice: {}", self.bob_sends),
            format!("alice→bob: {}", self.alice_sends),
        ]
    }

    /// Compares the keys as permutations when they fit `bound`, otherwise on
    /// the supplied sample points.
    pub fn keys_agree<'a>(&self, bound: usize, samples: impl IntoIterator<Item = &'a BigUint>) -> Result<bool> {
        match (self.bob_key.materialize(bound), self.alice_key.materialize(bound)) {
            (Ok(b), Ok(a)) => Ok(a == b),
            (Err(Error::MaterializationBound { .. }), _) | (_, Err(Error::MaterializationBound { .. })) => {
                self.bob_key.agrees_on(&self.alice_key, samples)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }
}

/// Runs one exchange with public point `i` and secrets `j` (Bob), `l` (Alice).
pub fn key_exchange(base: &Solution, k: u32, i: &BigUint, bob_secret: &BigUint, alice_secret: &BigUint) -> Result<KeyExchange> {
    let public = LazyKey::new(base, i, k)?;
    let bob_sends = public.eval(bob_secret)?;
    let alice_sends = public.eval(alice_secret)?;

    let g_l = LazyKey::new(base, alice_secret, k)?;
    let g_j = LazyKey::new(base, bob_secret, k)?;
    let bob_inner = LazyKey::new(base, &g_l.eval_inverse(bob_secret)?, k)?;
    let alice_inner = LazyKey::new(base, &g_j.eval_inverse(alice_secret)?, k)?;
    Ok(KeyExchange {
        bob_sends,
        alice_sends,
        bob_key: ComposedKey {
            outer: g_l,
            inner: bob_inner,
        },
        alice_key: ComposedKey {
            outer: g_j,
            inner: alice_inner,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lazy_tree::DEFAULT_MATERIALIZE_BOUND;
    use crate::pump::g_of;
    use proptest::prelude::*;

    const SONG: &str = "ITS A WONDERFUL LIFE";

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn key(i: u64) -> LazyKey {
        LazyKey::new(&catalog::four_point_irretractable(), &big(i), 2).unwrap()
    }

    #[test]
    fn text_codec() {
        let code = encode_text(SONG).unwrap();
        assert_eq!(
            code.render(2),
            "09 20 19 00 01 00 23 15 14 04 05 18 06 21 12 00 12 09 06 05"
        );
        assert_eq!(decode_text(&code).unwrap(), SONG);
        assert!(encode_text("").unwrap().is_empty());
        assert_eq!(encode_text("A").unwrap(), BlockCode::from(vec![1]));
        assert_eq!(encode_text("a b").unwrap(), BlockCode::from(vec![1, 0, 2]));
        assert_eq!(encode_text("A1"), Err(Error::UnsupportedChar('1')));
        assert!(decode_text(&BlockCode::from(vec![27])).is_err());
    }

    #[test]
    fn block_parsing() {
        let code: BlockCode = "09 20  0\n108".parse().unwrap();
        assert_eq!(code, BlockCode::from(vec![9, 20, 0, 108]));
        assert_eq!(code.to_string(), "9 20 0 108");
        assert!("1 x".parse::<BlockCode>().is_err());
    }

    #[test]
    fn encrypt_song() {
        let c = encrypt(&encode_text(SONG).unwrap(), &key(46)).unwrap();
        assert_eq!(
            c.to_string(),
            "108 83 82 0 100 0 94 102 101 99 112 81 109 96 107 0 107 108 109 112"
        );
        assert_eq!(decode_text(&decrypt(&c, &key(46)).unwrap()).unwrap(), SONG);
    }

    #[test]
    fn zero_blocks_fixed() {
        let z = BlockCode::from(vec![0, 0, 0]);
        assert_eq!(encrypt(&z, &key(46)).unwrap(), z);
        assert_eq!(decrypt(&z, &key(46)).unwrap(), z);
    }

    #[test]
    fn out_of_range_block() {
        assert!(matches!(
            encrypt(&BlockCode::from(vec![257]), &key(46)),
            Err(Error::BlockOutOfRange { .. })
        ));
    }

    #[test]
    fn signature_song() {
        let m = encode_text(SONG).unwrap();
        let trace = sign(&m, &key(3), &key(46)).unwrap();
        assert_eq!(
            trace.intermediate.render(2),
            "247 208 205 00 255 00 193 249 250 256 243 206 242 195 248 00 248 247 242 243"
        );
        assert_eq!(
            trace.transmitted.render(2),
            "62 39 40 00 54 00 36 60 57 55 50 37 49 34 63 00 63 62 49 50"
        );
        assert_eq!(open_signature(&trace.transmitted, &key(46), &key(3)).unwrap(), m);
    }

    #[test]
    fn exchange_small_example() {
        let s = catalog::four_point_irretractable();
        let kx = key_exchange(&s, 1, &big(2), &big(3), &big(14)).unwrap();
        assert_eq!(kx.transcript(), vec!["bob→alice: 6", "alice→bob: 1"]);
        assert_eq!(kx.bob_key.describe(), "g^_14 g^_4");
        assert_eq!(kx.alice_key.describe(), "g^_3 g^_10");
        let shared = kx.bob_key.materialize(DEFAULT_MATERIALIZE_BOUND).unwrap();
        assert_eq!(shared, &g_of(&s, 4, 2).unwrap() * &g_of(&s, 1, 4).unwrap());
        assert_eq!(shared, &g_of(&s, 1, 3).unwrap() * &g_of(&s, 3, 2).unwrap());
        assert!(kx.keys_agree(DEFAULT_MATERIALIZE_BOUND, []).unwrap());
    }

    #[test]
    fn exchange_same_secret() {
        let s = catalog::four_point_irretractable();
        let kx = key_exchange(&s, 2, &big(46), &big(77), &big(77)).unwrap();
        assert!(kx.keys_agree(DEFAULT_MATERIALIZE_BOUND, []).unwrap());
    }

    #[test]
    fn exchange_two_point_exhaustive() {
        let s = catalog::cyclic_permutation(2);
        for (k, size) in [(1, 4u64), (2, 16)] {
            for j in 1..=size {
                for l in 1..=size {
                    let kx = key_exchange(&s, k, &big(1), &big(j), &big(l)).unwrap();
                    assert!(kx.keys_agree(DEFAULT_MATERIALIZE_BOUND, []).unwrap());
                }
            }
        }
    }

    #[test]
    fn exchange_lazy_comparison() {
        let s = catalog::four_point_irretractable();
        let kx = key_exchange(&s, 2, &big(46), &big(100), &big(201)).unwrap();
        let points: Vec<BigUint> = (1..=256u64).map(big).collect();
        assert!(kx.keys_agree(10, &points).unwrap());
        assert!(kx.keys_agree(DEFAULT_MATERIALIZE_BOUND, []).unwrap());
    }

    proptest! {
        #[test]
        fn round_trips(blocks in proptest::collection::vec(0u64..=256, 0..40), i in 1u64..=256, j in 1u64..=256) {
            let m = BlockCode::from(blocks);
            let (ki, kj) = (key(i), key(j));
            prop_assert_eq!(&decrypt(&encrypt(&m, &ki).unwrap(), &ki).unwrap(), &m);
            prop_assert_eq!(&encrypt(&decrypt(&m, &ki).unwrap(), &ki).unwrap(), &m);
            let t = sign(&m, &kj, &ki).unwrap();
            prop_assert_eq!(&open_signature(&t.transmitted, &ki, &kj).unwrap(), &m);

            let mut mat = ki.clone();
            mat.materialize(DEFAULT_MATERIALIZE_BOUND).unwrap();
            prop_assert_eq!(encrypt(&m, &mat).unwrap(), encrypt(&m, &ki).unwrap());
        }

        #[test]
        fn text_round_trip(text in "[A-Z ]{0,30}") {
            prop_assert_eq!(decode_text(&encode_text(&text).unwrap()).unwrap(), text);
        }
    }
}
