use std::collections::BTreeMap;

use super::{flatten, parse_word, FlatWord, WordError, WordExpr};

/// A finite presentation with named subgroups, relators stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FlatWord>,
    pub subgroups: BTreeMap<String, Vec<FlatWord>>,
}

impl Presentation {
    /// Builds a presentation, rejecting letters outside the generator list.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<FlatWord>,
        subgroups: BTreeMap<String, Vec<FlatWord>>,
    ) -> Result<Self, WordError> {
        let n = generators.len();
        let words = relators.iter().chain(subgroups.values().flatten());
        for w in words {
            if let Some(g) = w.max_generator().filter(|&g| g >= n) {
                return Err(WordError::Unassigned { generator: g });
            }
        }
        Ok(Presentation {
            generators,
            relators,
            subgroups,
        })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn subgroup(&self, name: &str) -> Option<&[FlatWord]> {
        self.subgroups.get(name).map(Vec::as_slice)
    }

    pub fn parse(&self, text: &str) -> Result<FlatWord, WordError> {
        Ok(flatten(&parse_word(text, &self.generators)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorEntry {
    pub line: usize,
    pub text: String,
    pub expr: WordExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupEntry {
    pub line: usize,
    pub name: String,
    pub texts: Vec<String>,
    pub exprs: Vec<WordExpr>,
}

/// `progenitor <degree> <basepoint> <control-gens...>`, basepoint 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgenitorDirective {
    pub line: usize,
    pub degree: usize,
    pub basepoint: usize,
    pub control_generators: Vec<usize>,
}

/// Parsed contents of a presentation file, keeping relators as trees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<RelatorEntry>,
    pub subgroups: Vec<SubgroupEntry>,
    pub progenitor: Option<ProgenitorDirective>,
    /// `action <gen> <cycles>` lines: generator index, line, cycle text.
    pub actions: Vec<(usize, usize, String)>,
}

impl PresentationFile {
    pub fn presentation(&self) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| flatten(&r.expr)).collect(),
            subgroups: self
                .subgroups
                .iter()
                .map(|s| (s.name.clone(), s.exprs.iter().map(flatten).collect()))
                .collect(),
        }
    }
}

fn file_err(line: usize, msg: impl Into<String>) -> WordError {
    WordError::File {
        line,
        msg: msg.into(),
    }
}

fn word_err(line: usize, e: WordError) -> WordError {
    file_err(line, e.to_string())
}

/// Splits on whitespace outside parentheses and brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if let Some(st) = start.take() {
                out.push(&s[st..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(&s[st..]);
    }
    out
}

/// Parses the line-oriented presentation format.
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile, WordError> {
    let mut file = PresentationFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        let needs_gens = !matches!(keyword, "group" | "gens");
        if needs_gens && file.generators.is_empty() {
            return Err(file_err(line, format!("'{keyword}' before 'gens'")));
        }
        match keyword {
            "group" => {
                if rest.is_empty() {
                    return Err(file_err(line, "missing group name"));
                }
                file.name = Some(rest.to_string());
            }
            "gens" => {
                if !file.generators.is_empty() {
                    return Err(file_err(line, "duplicate 'gens'"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(file_err(line, "no generators"));
                }
                for (i, n) in names.iter().enumerate() {
                    let valid = n.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !valid {
                        return Err(file_err(line, format!("invalid generator name {n:?}")));
                    }
                    if names[..i].contains(n) {
                        return Err(file_err(line, format!("duplicate generator {n:?}")));
                    }
                }
                file.generators = names;
            }
            "rel" => {
                let expr = parse_word(rest, &file.generators).map_err(|e| word_err(line, e))?;
                file.relators.push(RelatorEntry {
                    line,
                    text: rest.to_string(),
                    expr,
                });
            }
            "sub" => {
                let parts = split_top_level(rest);
                let Some((name, words)) = parts.split_first() else {
                    return Err(file_err(line, "missing subgroup name"));
                };
                if file.subgroups.iter().any(|s| s.name == *name) {
                    return Err(file_err(line, format!("duplicate subgroup {name:?}")));
                }
                let exprs = words
                    .iter()
                    .map(|w| parse_word(w, &file.generators))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| word_err(line, e))?;
                file.subgroups.push(SubgroupEntry {
                    line,
                    name: name.to_string(),
                    texts: words.iter().map(|w| w.to_string()).collect(),
                    exprs,
                });
            }
            "progenitor" => {
                if file.progenitor.is_some() {
                    return Err(file_err(line, "duplicate 'progenitor'"));
                }
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() < 3 {
                    return Err(file_err(
                        line,
                        "expected: progenitor <degree> <basepoint> <control-gens...>",
                    ));
                }
                let degree: usize = parts[0]
                    .parse()
                    .map_err(|_| file_err(line, format!("bad degree {:?}", parts[0])))?;
                let basepoint: usize = parts[1]
                    .parse()
                    .map_err(|_| file_err(line, format!("bad basepoint {:?}", parts[1])))?;
                if basepoint == 0 || basepoint > degree {
                    return Err(file_err(line, format!("basepoint {basepoint} out of range")));
                }
                let control_generators = parts[2..]
                    .iter()
                    .map(|n| {
                        file.generators
                            .iter()
                            .position(|g| g == n)
                            .ok_or_else(|| file_err(line, format!("unknown generator {n:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                file.progenitor = Some(ProgenitorDirective {
                    line,
                    degree,
                    basepoint,
                    control_generators,
                });
            }
            "action" => {
                let (name, cycles) = rest
                    .split_once(char::is_whitespace)
                    .map(|(n, c)| (n, c.trim()))
                    .unwrap_or((rest, ""));
                let g = file
                    .generators
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| file_err(line, format!("unknown generator {name:?}")))?;
                if file.actions.iter().any(|a| a.0 == g) {
                    return Err(file_err(line, format!("duplicate action for {name:?}")));
                }
                file.actions.push((g, line, cycles.to_string()));
            }
            other => return Err(file_err(line, format!("unknown directive {other:?}"))),
        }
    }
    if file.generators.is_empty() {
        return Err(file_err(0, "no 'gens' line"));
    }
    Ok(file)
}
