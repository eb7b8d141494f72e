//! Freely reduced words and their combinatorics.
//!
//! A word is a sequence of nonzero letters: `+i` is the i-th generator
//! (1-based), `-i` its inverse. Reduction cancels adjacent inverse pairs;
//! normal forms are unique, so equality is `Vec` equality.

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters<It: IntoIterator<Item = i32>>(letters: It) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(i: usize) -> Self {
        Word { letters: vec![i as i32 + 1] }
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

    /// Largest generator index used (1-based), 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Write `self = u * c * u^-1` with `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let mut letters = self.letters.clone();
        let mut conjugator = Vec::new();
        while letters.len() >= 2 && letters[0] == -letters[letters.len() - 1] {
            conjugator.push(letters[0]);
            letters.remove(0);
            letters.pop();
        }
        (Word { letters: conjugator }, Word { letters })
    }

    /// Smallest period of the letter sequence that divides its length.
    fn minimal_period(letters: &[i32]) -> usize {
        let n = letters.len();
        'next: for p in 1..=n {
            if !n.is_multiple_of(p) {
                continue;
            }
            for i in p..n {
                if letters[i] != letters[i - p] {
                    continue 'next;
                }
            }
            return p;
        }
        n
    }

    /// The primitive root `p` of a nonempty word: the unique non-proper-power
    /// with `self = p^e`, `e >= 1`. The centralizer of `self` in a free group
    /// is the cyclic group on `p`.
    pub fn primitive_root(&self) -> Word {
        assert!(!self.is_empty(), "the identity has no primitive root");
        let (u, c) = self.cyclic_decomposition();
        let p = Self::minimal_period(c.letters());
        let core = Word { letters: c.letters()[..p].to_vec() };
        u.mul(&core).mul(&u.inverse())
    }

    /// Exponent `e >= 1` with `self = primitive_root()^e`.
    pub fn primitive_exponent(&self) -> i64 {
        assert!(!self.is_empty());
        let (_, c) = self.cyclic_decomposition();
        (c.len() / Self::minimal_period(c.letters())) as i64
    }

    /// Solve `self = base^e` for an integer exponent, if one exists.
    pub fn log_base(&self, base: &Word) -> Option<i64> {
        if base.is_empty() {
            return if self.is_empty() { Some(0) } else { None };
        }
        if self.is_empty() {
            return Some(0);
        }
        let p_self = self.primitive_root();
        let p_base = base.primitive_root();
        let (e_self, e_base) = (self.primitive_exponent(), base.primitive_exponent());
        let (num, den) = if p_self == p_base {
            (e_self, e_base)
        } else if p_self == p_base.inverse() {
            (-e_self, e_base)
        } else {
            return None;
        };
        if num % den != 0 {
            return None;
        }
        let e = num / den;
        // Guard against orientation slips by checking the result.
        (base.pow(e) == *self).then_some(e)
    }

    /// Exponent sums per generator, for a free group of rank `k`.
    pub fn abelianization(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0i64; k];
        for &l in &self.letters {
            let idx = l.unsigned_abs() as usize - 1;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let name = |g: i32| {
            let idx = (g.unsigned_abs() - 1) as usize;
            if idx < 26 {
                char::from(b'a' + idx as u8).to_string()
            } else {
                format!("g{}", idx + 1)
            }
        };
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = if l > 0 { run as i64 } else { -(run as i64) };
            if e == 1 {
                parts.push(name(l));
            } else {
                parts.push(format!("{}^{}", name(l), e));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}
