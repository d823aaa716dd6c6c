use std::fmt::Write;

/// A group-word expression over generators numbered by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordExpr {
    Gen(usize),
    Product(Vec<WordExpr>),
    /// Nonzero integer power; `^-1` is the inverse.
    Power(Box<WordExpr>, i64),
    /// `a^b := b⁻¹·a·b`.
    Conjugate(Box<WordExpr>, Box<WordExpr>),
    /// `[a,b] := a⁻¹·b⁻¹·a·b`.
    Commutator(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn power(base: WordExpr, exp: i64) -> Self {
        WordExpr::Power(Box::new(base), exp)
    }

    pub fn conjugate(base: WordExpr, by: WordExpr) -> Self {
        WordExpr::Conjugate(Box::new(base), Box::new(by))
    }

    pub fn commutator(a: WordExpr, b: WordExpr) -> Self {
        WordExpr::Commutator(Box::new(a), Box::new(b))
    }

    /// Generator indices that occur anywhere in the tree.
    pub fn generators_used(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_gens(&self, out: &mut Vec<usize>) {
        match self {
            WordExpr::Gen(g) => out.push(*g),
            WordExpr::Product(fs) => fs.iter().for_each(|f| f.collect_gens(out)),
            WordExpr::Power(b, _) => b.collect_gens(out),
            WordExpr::Conjugate(a, b) | WordExpr::Commutator(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
        }
    }

    /// Renders in the file grammar; the output reparses to the same tree.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write(names, &mut s);
        s
    }

    fn write(&self, names: &[String], out: &mut String) {
        match self {
            WordExpr::Gen(g) => out.push_str(&names[*g]),
            WordExpr::Product(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    if matches!(f, WordExpr::Product(_)) {
                        out.push('(');
                        f.write(names, out);
                        out.push(')');
                    } else {
                        f.write(names, out);
                    }
                }
            }
            WordExpr::Power(b, k) => {
                b.write_base(names, out);
                let _ = write!(out, "^{k}");
            }
            WordExpr::Conjugate(b, e) => {
                b.write_base(names, out);
                out.push('^');
                if let WordExpr::Gen(g) = **e {
                    out.push_str(&names[g]);
                } else {
                    out.push('(');
                    e.write(names, out);
                    out.push(')');
                }
            }
            WordExpr::Commutator(a, b) => {
                out.push('[');
                a.write(names, out);
                out.push(',');
                b.write(names, out);
                out.push(']');
            }
        }
    }

    fn write_base(&self, names: &[String], out: &mut String) {
        if matches!(self, WordExpr::Product(_)) {
            out.push('(');
            self.write(names, out);
            out.push(')');
        } else {
            self.write(names, out);
        }
    }
}
