//! Braid words and Seifert matrices of their closures.
//!
//! The Seifert surface of a braid closure is the stack of `n` disks bounded
//! by the closed strands, joined by one half-twisted band per letter. For
//! each generator index `i`, consecutive occurrences of `σ_i^{±1}` bound a
//! loop through two bands; these loops form a basis of the first homology,
//! so the Seifert matrix has size `len - n + 1` for a connected surface.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::linalg::IntMatrix;

pub const MAX_STRANDS: usize = 64;
pub const MAX_LETTERS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter {letter} is not a generator on {strands} strands")]
    BadLetter { letter: i32, strands: usize },
    #[error("braid closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("strand gap at generator {0}: Seifert surface is disconnected")]
    Disconnected(usize),
    #[error("braid exceeds size cap ({strands} strands, {letters} letters; max {MAX_STRANDS} / {MAX_LETTERS})")]
    TooLarge { strands: usize, letters: usize },
    #[error("invalid torus parameters ({p},{q})")]
    BadTorus { p: i64, q: i64 },
    #[error("cable parameter q = {0} must be odd")]
    EvenCable(i64),
}

/// A word in the Artin generators on `strands` strands. Letter `i` is
/// `σ_i`, letter `-i` is `σ_i^{-1}`; `1 <= |i| < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::BadLetter {
                letter: bad,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// The trivial braid on one strand; its closure is the unknot.
    pub fn unknot() -> Self {
        BraidWord {
            strands: 1,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.signum())).sum()
    }

    pub fn check_cap(&self) -> Result<(), BraidError> {
        if self.strands > MAX_STRANDS || self.letters.len() > MAX_LETTERS {
            return Err(BraidError::TooLarge {
                strands: self.strands,
                letters: self.letters.len(),
            });
        }
        Ok(())
    }

    /// Replaces one letter with its inverse.
    pub fn with_flipped(&self, idx: usize) -> Self {
        let mut w = self.clone();
        w.letters[idx] = -w.letters[idx];
        w
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// `(σ_1 ⋯ σ_{p-1})^q`; negative `q` uses inverse letters.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord, BraidError> {
    if p < 2 || q.abs() < 2 || p.gcd(&q.abs()) != 1 {
        return Err(BraidError::BadTorus { p, q });
    }
    let strands = p as usize;
    let count = (p - 1) as u128 * q.unsigned_abs() as u128;
    if strands > MAX_STRANDS || count > MAX_LETTERS as u128 {
        return Err(BraidError::TooLarge {
            strands,
            letters: count.min(usize::MAX as u128) as usize,
        });
    }
    let sign = q.signum() as i32;
    let letters = (0..q.abs())
        .flat_map(|_| (1..p as i32).map(move |i| sign * i))
        .collect();
    Ok(BraidWord { strands, letters })
}

pub fn mirror_braid(w: &BraidWord) -> BraidWord {
    BraidWord {
        strands: w.strands,
        letters: w.letters.iter().map(|l| -l).collect(),
    }
}

/// Braid whose closure is the connected sum: `w2` is shifted onto the last
/// strand of `w1`.
pub fn sum_braid(w1: &BraidWord, w2: &BraidWord) -> Result<BraidWord, BraidError> {
    require_knot(w1)?;
    require_knot(w2)?;
    let shift = (w1.strands - 1) as i32;
    let letters = w1
        .letters
        .iter()
        .copied()
        .chain(w2.letters.iter().map(|&l| l + l.signum() * shift))
        .collect();
    let w = BraidWord {
        strands: w1.strands + w2.strands - 1,
        letters,
    };
    w.check_cap()?;
    Ok(w)
}

/// Braid whose closure is the (2,q)-cable of `closure(w)`: every strand is
/// doubled, each crossing becomes the four crossings of two parallel pairs,
/// and `q - 2·writhe(w)` twists on the first pair correct the blackboard
/// framing.
pub fn cable2_braid(w: &BraidWord, q: i64) -> Result<BraidWord, BraidError> {
    if q.is_even() {
        return Err(BraidError::EvenCable(q));
    }
    require_knot(w)?;
    let twist = q - 2 * w.writhe();
    let letters_len = 4 * w.letters.len() as u128 + twist.unsigned_abs() as u128;
    if 2 * w.strands > MAX_STRANDS || letters_len > MAX_LETTERS as u128 {
        return Err(BraidError::TooLarge {
            strands: 2 * w.strands,
            letters: letters_len.min(usize::MAX as u128) as usize,
        });
    }
    let mut letters = Vec::with_capacity(letters_len as usize);
    for &l in &w.letters {
        let s = l.signum();
        let i = l.abs();
        letters.extend([s * 2 * i, s * (2 * i - 1), s * (2 * i + 1), s * 2 * i]);
    }
    let tsign = twist.signum() as i32;
    letters.extend(std::iter::repeat_n(tsign, twist.unsigned_abs() as usize));
    Ok(BraidWord {
        strands: 2 * w.strands,
        letters,
    })
}

/// Number of components of the closure: cycles of the strand permutation.
pub fn closure_components(w: &BraidWord) -> usize {
    let mut perm: Vec<usize> = (0..w.strands).collect();
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; w.strands];
    let mut cycles = 0;
    for s in 0..w.strands {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

fn require_knot(w: &BraidWord) -> Result<(), BraidError> {
    match closure_components(w) {
        1 => Ok(()),
        c => Err(BraidError::NotAKnot(c)),
    }
}

/// A homology loop between consecutive occurrences of generator `gen` at
/// word positions `first < second`.
#[derive(Clone, Copy, Debug)]
struct Loop {
    gen: u32,
    first: usize,
    second: usize,
}

/// Seifert matrix of the closure of `w`.
///
/// Convention: the right-handed trefoil `σ_1^3` has signature −2.
/// Entries, for loops `a` and `b` with signs `ε` of their crossings:
/// - diagonal: `-(ε_first + ε_second) / 2`;
/// - same generator, `b` starts where `a` ends with crossing sign `s`:
///   `V[a][b] = (1 + s) / 2`, `V[b][a] = -(1 - s) / 2`;
/// - `a` on generator `i`, `b` on `i + 1`: `V[a][b] = -1` when the positions
///   interleave as `a1 < b1 < a2 < b2`, `+1` when `b1 < a1 < b2 < a2`, and
///   `V[b][a] = 0`;
/// - all other pairs are unlinked.
pub fn seifert_matrix(w: &BraidWord) -> Result<IntMatrix, BraidError> {
    w.check_cap()?;
    require_knot(w)?;
    let n = w.strands;
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); n.saturating_sub(1)];
    for (pos, &l) in w.letters.iter().enumerate() {
        positions[l.unsigned_abs() as usize - 1].push(pos);
    }
    if let Some(gap) = positions.iter().position(Vec::is_empty) {
        return Err(BraidError::Disconnected(gap + 1));
    }
    let loops: Vec<Loop> = positions
        .iter()
        .enumerate()
        .flat_map(|(g, ps)| {
            ps.windows(2).map(move |pair| Loop {
                gen: g as u32 + 1,
                first: pair[0],
                second: pair[1],
            })
        })
        .collect();
    let sign = |pos: usize| i64::from(w.letters[pos].signum());
    let m = loops.len();
    let mut v = IntMatrix::zeros(m);
    for (x, a) in loops.iter().enumerate() {
        v.set(x, x, BigInt::from(-(sign(a.first) + sign(a.second)) / 2));
        for (y, b) in loops.iter().enumerate().skip(x + 1) {
            if b.gen == a.gen && b.first == a.second {
                let s = sign(a.second);
                v.set(x, y, BigInt::from((1 + s) / 2));
                v.set(y, x, BigInt::from(-(1 - s) / 2));
            } else if b.gen == a.gen + 1 {
                if let Some(val) = interleave(a, b) {
                    v.set(x, y, BigInt::from(val));
                }
            } else if a.gen == b.gen + 1 {
                if let Some(val) = interleave(b, a) {
                    v.set(y, x, BigInt::from(val));
                }
            }
        }
    }
    Ok(v)
}

/// Linking entry `V[lower][upper]` for loops on adjacent generators.
fn interleave(lower: &Loop, upper: &Loop) -> Option<i64> {
    let (a1, a2, b1, b2) = (lower.first, lower.second, upper.first, upper.second);
    if a1 < b1 && b1 < a2 && a2 < b2 {
        Some(-1)
    } else if b1 < a1 && a1 < b2 && b2 < a2 {
        Some(1)
    } else {
        None
    }
}
