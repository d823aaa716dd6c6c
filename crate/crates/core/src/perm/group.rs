use std::collections::{HashSet, VecDeque};

use super::{PermError, Permutation};

/// Largest group [`PermutationGroup::elements`] will list by default (2^21).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 21;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of the stabilizer chain.
///
/// `gens` generates the level's group `G_i`; `reps[k]` maps the base point
/// to `orbit[k]`. The pairs `(orbit[..checked_points], gens[..checked_gens])`
/// have had their Schreier generators sifted successfully.
#[derive(Debug, Clone)]
struct Level {
    base_point: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut slot = vec![NOT_IN_ORBIT; degree];
        slot[base_point as usize] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
            checked_points: 0,
            checked_gens: 0,
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let new_gen = self.gens.len() - 1;
        let old_len = self.orbit.len();
        for idx in 0..old_len {
            self.extend_orbit(idx, new_gen);
        }
        let mut idx = old_len;
        while idx < self.orbit.len() {
            for s in 0..self.gens.len() {
                self.extend_orbit(idx, s);
            }
            idx += 1;
        }
    }

    fn extend_orbit(&mut self, idx: usize, s: usize) {
        let beta = self.orbit[idx];
        let gamma = self.gens[s].image(beta);
        if self.slot[gamma as usize] == NOT_IN_ORBIT {
            let rep = self.reps[idx].then(&self.gens[s]);
            self.slot[gamma as usize] = self.orbit.len() as u32;
            self.orbit.push(gamma);
            self.inv_reps.push(rep.inverse());
            self.reps.push(rep);
        }
    }
}

/// A permutation group stored as a base and strong generating set.
///
/// The base is chosen deterministically: any requested prefix first, then
/// the smallest point moved by each new strong generator.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    /// Runs deterministic Schreier–Sims on `gens`. An empty generator list
    /// gives the trivial group of the declared degree.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// As [`PermutationGroup::new`], but the base starts with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        gens: Vec<Permutation>,
        prefix: &[u32],
    ) -> Result<Self, PermError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        for &p in prefix {
            check_point(p, degree)?;
        }
        let mut group = PermutationGroup {
            degree,
            generators: gens.clone(),
            levels: prefix.iter().map(|&p| Level::new(degree, p)).collect(),
        };
        let mut seen = HashSet::new();
        for g in gens {
            if !g.is_identity() && seen.insert(g.clone()) {
                group.insert_strong_generator(g);
            }
        }
        group.complete();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Union of the generators of every chain level, without repeats.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Exact order; errors if it does not fit in 64 bits.
    pub fn order(&self) -> Result<u64, PermError> {
        self.levels.iter().try_fold(1u64, |acc, l| {
            acc.checked_mul(l.orbit.len() as u64)
                .ok_or(PermError::OrderOverflow)
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let (residue, depth) = self.sift(p, 0);
        Ok(depth == self.levels.len() && residue.is_identity())
    }

    /// Adds `g` as a generator; returns `false` if it was already a member.
    pub fn add_generator(&mut self, g: Permutation) -> Result<bool, PermError> {
        if self.contains(&g)? {
            return Ok(false);
        }
        self.generators.push(g.clone());
        self.insert_strong_generator(g);
        self.complete();
        Ok(true)
    }

    /// Sorted orbit of `point` under the generators.
    pub fn orbit(&self, point: u32) -> Result<Vec<u32>, PermError> {
        check_point(point, self.degree)?;
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        let gens = self.strong_generators();
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = g.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                    queue.push_back(q);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if !done[p as usize] {
                let orbit = self.orbit(p).expect("point in range");
                for &q in &orbit {
                    done[q as usize] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub fn point_stabilizer(&self, point: u32) -> Result<PermutationGroup, PermError> {
        self.pointwise_stabilizer(&[point])
    }

    /// Stabilizer of each point in `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermutationGroup, PermError> {
        for &p in points {
            check_point(p, self.degree)?;
        }
        let chain = if self.base().starts_with(points) {
            self.clone()
        } else {
            PermutationGroup::with_base_prefix(self.degree, self.strong_generators(), points)?
        };
        let k = points.len();
        if chain.levels.len() <= k {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        Ok(PermutationGroup {
            degree: self.degree,
            generators: chain.levels[k].gens.clone(),
            levels: chain.levels[k..].to_vec(),
        })
    }

    /// Lists every element; refuses groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>, PermError> {
        let order = self.order()?;
        if order > cap {
            return Err(PermError::CapExceeded { order, cap });
        }
        let mut current = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.reps.len());
            for h in &current {
                for u in &level.reps {
                    next.push(h.then(u));
                }
            }
            current = next;
        }
        Ok(current)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.strong_generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// True if every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> Result<bool, PermError> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subgroup containing `seeds` and normalized by `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup, PermError> {
        let mut closure = PermutationGroup::new(self.degree, Vec::new())?;
        let mut pending: Vec<Permutation> = Vec::new();
        for s in seeds {
            if closure.add_generator(s.clone())? {
                pending.push(s.clone());
            }
        }
        let gens = self.strong_generators();
        let mut idx = 0;
        while idx < pending.len() {
            let h = pending[idx].clone();
            idx += 1;
            for g in &gens {
                let c = h.conjugate_by(g);
                if closure.add_generator(c.clone())? {
                    pending.push(c);
                }
            }
        }
        Ok(closure)
    }

    /// Commutator subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermutationGroup, PermError> {
        let gens = self.strong_generators();
        let mut seeds = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// Centralizer of `targets` by listing the whole group.
    pub fn centralizer_bruteforce(
        &self,
        targets: &[Permutation],
        cap: u64,
    ) -> Result<PermutationGroup, PermError> {
        for t in targets {
            if t.degree() != self.degree {
                return Err(PermError::DegreeMismatch {
                    left: self.degree,
                    right: t.degree(),
                });
            }
        }
        let mut centralizer = PermutationGroup::trivial(self.degree);
        for g in self.elements(cap)? {
            if targets.iter().all(|t| g.commutes_with(t)) {
                centralizer.add_generator(g)?;
            }
        }
        Ok(centralizer)
    }

    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base_point);
            let k = level.slot[b as usize];
            if k == NOT_IN_ORBIT {
                return (h, i);
            }
            if k != 0 {
                h = h.then(&level.inv_reps[k as usize]);
            }
        }
        (h, self.levels.len())
    }

    /// Puts `g` on every level up to the first base point it moves,
    /// opening a new level if it fixes the whole base.
    fn insert_strong_generator(&mut self, g: Permutation) {
        let depth = self
            .levels
            .iter()
            .position(|l| !g.fixes(l.base_point))
            .unwrap_or(self.levels.len());
        if depth == self.levels.len() {
            let b = g.smallest_moved_point().expect("non-identity generator");
            self.levels.push(Level::new(self.degree, b));
        }
        for level in &mut self.levels[..=depth] {
            level.add_gen(g.clone());
        }
    }

    /// Sifts every untested Schreier generator, deepest level first, until
    /// each level's point stabilizer is generated by the level below.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.first_failing_schreier_generator(lvl) {
                None => i -= 1,
                Some((residue, depth)) => {
                    if depth == self.levels.len() {
                        let b = residue.smallest_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for level in &mut self.levels[lvl + 1..=depth] {
                        level.add_gen(residue.clone());
                    }
                    i = depth + 1;
                }
            }
        }
    }

    fn first_failing_schreier_generator(&mut self, lvl: usize) -> Option<(Permutation, usize)> {
        let n = self.degree;
        let level = &self.levels[lvl];
        let (points, gens) = (level.orbit.len(), level.gens.len());
        let (cp, cg) = (level.checked_points, level.checked_gens);
        let mut images = vec![0u32; n];
        for p in 0..points {
            let first_gen = if p < cp { cg } else { 0 };
            for s in first_gen..gens {
                let level = &self.levels[lvl];
                let rep = &level.reps[p];
                let gen = &level.gens[s];
                let gamma = gen.image(level.orbit[p]);
                let inv = &level.inv_reps[level.slot[gamma as usize] as usize];
                let mut trivial = true;
                for (i, img) in images.iter_mut().enumerate() {
                    *img = inv.image(gen.image(rep.image(i as u32)));
                    trivial &= *img == i as u32;
                }
                if trivial {
                    continue;
                }
                let schreier = Permutation::from_images_unchecked(images.clone());
                let (residue, depth) = self.sift(&schreier, lvl + 1);
                if depth < self.levels.len() || !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        let level = &mut self.levels[lvl];
        level.checked_points = points;
        level.checked_gens = gens;
        None
    }
}

fn check_point(point: u32, degree: usize) -> Result<(), PermError> {
    if (point as usize) < degree {
        Ok(())
    } else {
        Err(PermError::PointOutOfRange {
            point: point as usize,
            degree,
        })
    }
}
