use std::fmt::Write;

use super::{WordError, WordExpr};
use crate::perm::Permutation;

/// A freely reduced word over signed generator letters: `g + 1` for
/// generator `g`, `-(g + 1)` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlatWord(Vec<i32>);

impl FlatWord {
    pub fn empty() -> Self {
        FlatWord(Vec::new())
    }

    /// Freely reduces `letters`. Panics on the letter 0.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "0 is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FlatWord(out)
    }

    pub fn generator(g: usize) -> Self {
        FlatWord(vec![g as i32 + 1])
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

    pub fn inverse(&self) -> Self {
        FlatWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &FlatWord) -> Self {
        FlatWord::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        FlatWord::from_letters(letters)
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &FlatWord) -> Self {
        by.inverse().concat(self).concat(by)
    }

    pub fn commutator(&self, other: &FlatWord) -> Self {
        self.inverse()
            .concat(&other.inverse())
            .concat(self)
            .concat(other)
    }

    /// Strips letters that cancel between the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == -self.0[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        FlatWord(self.0[lo..hi].to_vec())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Compact rendering with runs collapsed, e.g. `x^2*t*x^-2`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&names[l.unsigned_abs() as usize - 1]);
            let exp = if l < 0 { -(run as i64) } else { run as i64 };
            if exp != 1 {
                let _ = write!(s, "^{exp}");
            }
            i += run;
        }
        s
    }
}

/// Expands conjugates, commutators and powers into a freely reduced word.
pub fn flatten(e: &WordExpr) -> FlatWord {
    match e {
        WordExpr::Gen(g) => FlatWord::generator(*g),
        WordExpr::Product(fs) => FlatWord::from_letters(
            fs.iter()
                .flat_map(|f| flatten(f).0)
                .collect::<Vec<_>>(),
        ),
        WordExpr::Power(b, k) => flatten(b).pow(*k),
        WordExpr::Conjugate(b, by) => flatten(b).conjugate(&flatten(by)),
        WordExpr::Commutator(a, b) => flatten(a).commutator(&flatten(b)),
    }
}

/// Evaluates `w` with generator `g` sent to `assignment[g]`; the word
/// `g₁g₂` applies `g₁` first.
pub fn evaluate(w: &FlatWord, assignment: &[Permutation]) -> Result<Permutation, WordError> {
    let degree = assignment.first().map_or(0, |p| p.degree());
    if let Some(bad) = assignment.iter().find(|p| p.degree() != degree) {
        return Err(WordError::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    let mut inverses: Vec<Option<Permutation>> = vec![None; assignment.len()];
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        let perm = assignment
            .get(g)
            .ok_or(WordError::Unassigned { generator: g })?;
        let perm = if l > 0 {
            perm
        } else {
            inverses[g].get_or_insert_with(|| perm.inverse())
        };
        for img in images.iter_mut() {
            *img = perm.image(*img);
        }
    }
    Ok(Permutation::from_images_unchecked(images))
}
