//! Mutable coset-table state shared by both strategies.
//!
//! Generator `g` owns columns `2g` (for `g`) and `2g + 1` (for `g⁻¹`), so the
//! inverse of column `c` is `c ^ 1`. Dead cosets keep their rows until the
//! coincidence queue has drained, then are dropped by compaction.

use super::{EnumerationError, EnumerationStats, Strategy};

pub(super) const UNDEF: u32 = u32::MAX;

/// Rows beyond this many dead ones trigger compaction at a safe point.
const COMPACT_MIN_DEAD: usize = 1 << 14;

pub(super) fn column(letter: i32) -> u32 {
    let g = letter.unsigned_abs() - 1;
    2 * g + u32::from(letter < 0)
}

/// Relators as column sequences, plus the cyclic conjugates of each relator
/// and its inverse indexed by first column.
pub(super) struct Relators {
    pub words: Vec<Vec<u32>>,
    pub by_first: Vec<Vec<Vec<u32>>>,
}

impl Relators {
    pub fn new(words: Vec<Vec<u32>>, ncols: usize) -> Self {
        let mut by_first: Vec<Vec<Vec<u32>>> = vec![Vec::new(); ncols];
        for w in &words {
            let inv: Vec<u32> = w.iter().rev().map(|c| c ^ 1).collect();
            for base in [w, &inv] {
                for k in 0..base.len() {
                    let mut rot = base[k..].to_vec();
                    rot.extend_from_slice(&base[..k]);
                    let slot = &mut by_first[rot[0] as usize];
                    if !slot.contains(&rot) {
                        slot.push(rot);
                    }
                }
            }
        }
        Relators { words, by_first }
    }
}

pub(super) struct Engine {
    pub ncols: usize,
    pub table: Vec<u32>,
    parent: Vec<u32>,
    pub live: usize,
    cap: usize,
    queue: Vec<u32>,
    record_deductions: bool,
    pub deductions: Vec<(u32, u32)>,
    pub stats: EnumerationStats,
}

impl Engine {
    pub fn new(ncols: usize, cap: usize, strategy: Strategy) -> Self {
        Engine {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            cap,
            queue: Vec::new(),
            record_deductions: strategy == Strategy::Felsch,
            deductions: Vec::new(),
            stats: EnumerationStats {
                strategy,
                cosets_defined: 1,
                max_live: 1,
                ..Default::default()
            },
        }
    }

    pub fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn get(&self, coset: u32, col: u32) -> u32 {
        self.table[coset as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, coset: u32, col: u32, value: u32) {
        self.table[coset as usize * self.ncols + col as usize] = value;
    }

    #[inline]
    pub fn is_live(&self, coset: u32) -> bool {
        self.parent[coset as usize] == coset
    }

    fn cap_error(&self) -> EnumerationError {
        EnumerationError::CapExceeded {
            cap: self.cap,
            live: self.live,
            total: self.stats.cosets_defined,
        }
    }

    /// Defines a new coset as the image of `coset` under `col`.
    pub fn define(&mut self, coset: u32, col: u32) -> Result<u32, EnumerationError> {
        if self.live >= self.cap {
            return Err(self.cap_error());
        }
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.resize(self.table.len() + self.ncols, UNDEF);
        self.live += 1;
        self.stats.cosets_defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        self.link(coset, col, n);
        Ok(n)
    }

    fn link(&mut self, a: u32, col: u32, b: u32) {
        self.set(a, col, b);
        self.set(b, col ^ 1, a);
        if self.record_deductions {
            self.deductions.push((a, col));
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.stats.coincidences += 1;
        self.queue.push(kill);
    }

    /// Identifies `a` and `b` and every consequence, to exhaustion.
    pub fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for col in 0..self.ncols as u32 {
                let delta = self.get(gamma, col);
                if delta == UNDEF {
                    continue;
                }
                self.set(delta, col ^ 1, UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, col ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.link(mu, col, nu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `word` from `alpha`. Records a deduction when exactly one gap
    /// remains, a coincidence when the scan closes on a different coset, and
    /// with `fill` defines new cosets to complete the scan.
    pub fn scan(&mut self, alpha: u32, word: &[u32], fill: bool) -> Result<(), EnumerationError> {
        let mut f = alpha;
        let mut i = 0;
        let mut b = alpha;
        let mut j = word.len();
        loop {
            while i < j {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, word[j - 1] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.link(f, word[i], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// Processes pending deductions with the relator conjugates indexed by
    /// their first column.
    pub fn process_deductions(&mut self, relators: &Relators) -> Result<(), EnumerationError> {
        while let Some((alpha, col)) = self.deductions.pop() {
            self.stats.deductions += 1;
            for (start, c) in [(alpha, col), (self.get(alpha, col), col ^ 1)] {
                for k in 0..relators.by_first[c as usize].len() {
                    if start == UNDEF || !self.is_live(start) {
                        break;
                    }
                    self.scan(start, &relators.by_first[c as usize][k], false)?;
                }
            }
        }
        Ok(())
    }

    /// Scans every relator from every live coset without defining.
    pub fn lookahead(&mut self, relators: &Relators) -> Result<(), EnumerationError> {
        self.stats.lookaheads += 1;
        let mut c = 0;
        while (c as usize) < self.rows() {
            for r in &relators.words {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false)?;
            }
            c += 1;
        }
        self.deductions.clear();
        Ok(())
    }

    pub fn should_compact(&self) -> bool {
        let dead = self.rows() - self.live;
        dead >= COMPACT_MIN_DEAD && dead >= self.live
    }

    /// Renumbers live cosets in order and drops dead rows. Only valid with
    /// no pending coincidences or deductions. Returns the old → new map.
    pub fn compact(&mut self) -> Vec<u32> {
        debug_assert!(self.queue.is_empty() && self.deductions.is_empty());
        self.stats.compactions += 1;
        let rows = self.rows();
        let mut map = vec![UNDEF; rows];
        let mut next = 0u32;
        for c in 0..rows as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..rows {
            if map[c] == UNDEF {
                continue;
            }
            let row = &self.table[c * self.ncols..(c + 1) * self.ncols];
            table.extend(row.iter().map(|&e| if e == UNDEF { UNDEF } else { map[e as usize] }));
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    /// First live coset at or after `from` with an undefined entry.
    pub fn first_gap(&self, from: u32) -> Option<(u32, u32)> {
        (from..self.rows() as u32)
            .filter(|&c| self.is_live(c))
            .find_map(|c| {
                (0..self.ncols as u32)
                    .find(|&col| self.get(c, col) == UNDEF)
                    .map(|col| (c, col))
            })
    }

    /// Live rows renumbered breadth-first from coset 0, scanning columns in
    /// order. Requires a complete table.
    pub fn standardized(&self) -> Vec<u32> {
        let rows = self.rows();
        let mut order = Vec::with_capacity(self.live);
        let mut map = vec![UNDEF; rows];
        map[0] = 0;
        order.push(0u32);
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for col in 0..self.ncols as u32 {
                let d = self.get(c, col);
                if map[d as usize] == UNDEF {
                    map[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut out = Vec::with_capacity(order.len() * self.ncols);
        for &c in &order {
            for col in 0..self.ncols as u32 {
                out.push(map[self.get(c, col) as usize]);
            }
        }
        out
    }
}
