use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the free group. Letters are `±(i + 1)` for
/// generator `i`; negative letters are inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

/// Reduce a letter sequence, cancelling adjacent `x x⁻¹` pairs.
pub fn free_reduce(letters: &[i32]) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &l in letters {
        assert!(l != 0, "letter 0 is not a generator");
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Table column of a letter: `2i` for generator `i`, `2i + 1` for its inverse.
pub fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// Inverse of [`column`].
pub fn letter_of_column(col: usize) -> i32 {
    let g = (col / 2 + 1) as i32;
    if col % 2 == 0 {
        g
    } else {
        -g
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i as i32 + 1])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        free_reduce(&letters.into_iter().collect::<Vec<_>>())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        free_reduce(&v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        free_reduce(&v)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// `g w g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// Strip matching first/last letters `x … x⁻¹`.
    pub fn cyclic_reduce(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j - i >= 2 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// Canonical representative of the conjugacy class of the cyclic word
    /// and its inverse: the smallest rotation of either.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclic_reduce();
        let mut best = w.0.clone();
        for base in [w.0.clone(), w.inverse().0] {
            let n = base.len();
            for r in 0..n {
                let rot: Vec<i32> = base[r..].iter().chain(&base[..r]).copied().collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        Word(best)
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Nonzero exponent sums per generator.
    pub fn exponent_sums(&self) -> Vec<(usize, i64)> {
        let mut sums: Vec<(usize, i64)> = Vec::new();
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            let s = l.signum() as i64;
            match sums.iter_mut().find(|(h, _)| *h == g) {
                Some(e) => e.1 += s,
                None => sums.push((g, s)),
            }
        }
        sums.retain(|(_, v)| *v != 0);
        sums.sort_unstable();
        sums
    }

    /// Rename generators: letter `±(i+1)` becomes the word `images[i]` (or
    /// its inverse).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for &l in &self.0 {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                v.extend_from_slice(&w.0);
            } else {
                v.extend(w.0.iter().rev().map(|&x| -x));
            }
        }
        free_reduce(&v)
    }

    /// Parse `a`–`z` (generators 0–25), `A`–`Z` (inverses), `[n]`/`[-n]`
    /// for the 1-based generator `n`, `1` or empty for the identity.
    /// Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                c if c.is_whitespace() => {}
                'a'..='z' => letters.push(c as i32 - 'a' as i32 + 1),
                'A'..='Z' => letters.push(-(c as i32 - 'A' as i32 + 1)),
                '1' if letters.is_empty() && chars.peek().is_none() => {}
                '[' => {
                    let mut num = String::new();
                    loop {
                        match chars.next() {
                            Some(']') => break,
                            Some(d) => num.push(d),
                            None => return Err(Error::parse(1, "unterminated `[`")),
                        }
                    }
                    let n: i32 = num.trim().parse().map_err(|_| Error::parse(1, format!("bad generator `[{num}]`")))?;
                    if n == 0 {
                        return Err(Error::parse(1, "generator numbers start at 1"));
                    }
                    letters.push(n);
                }
                _ => return Err(Error::parse(1, format!("unexpected character `{c}` in word"))),
            }
        }
        Ok(free_reduce(&letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let g = l.unsigned_abs();
            if g <= 26 {
                let base = if l > 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + (g - 1) as u8) as char)?;
            } else {
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}
