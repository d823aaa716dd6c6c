use super::{PermError, PermutationGroup};
use crate::union_find::UnionFind;

impl PermutationGroup {
    /// Finest block system in which `a` and `b` share a block.
    ///
    /// Atkinson's refinement: every time two classes merge, their images
    /// under each generator are merged too.
    pub fn minimal_blocks(&self, a: u32, b: u32) -> Result<Vec<Vec<u32>>, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let mut uf = UnionFind::new(self.degree());
        self.refine(&mut uf, a, b)?;
        Ok(uf.classes())
    }

    /// True iff no block system other than the trivial ones exists.
    pub fn is_primitive(&self) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let n = self.degree();
        if n <= 2 {
            return Ok(true);
        }
        // A block through 0 is a union of orbits of the stabilizer of 0, so
        // one representative per suborbit is enough.
        let stab = self.point_stabilizer(0)?;
        let mut uf = UnionFind::new(n);
        for orbit in stab.orbits() {
            let beta = orbit[0];
            if beta == 0 {
                continue;
            }
            uf.reset(n);
            self.refine(&mut uf, 0, beta)?;
            if (0..n as u32).any(|p| uf.find(p) != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn refine(&self, uf: &mut UnionFind, a: u32, b: u32) -> Result<(), PermError> {
        let n = self.degree();
        for p in [a, b] {
            if p as usize >= n {
                return Err(PermError::PointOutOfRange {
                    point: p as usize,
                    degree: n,
                });
            }
        }
        let gens = self.strong_generators();
        let mut queue = Vec::new();
        if uf.union(a, b).is_some() {
            queue.push((a, b));
        }
        while let Some((p, q)) = queue.pop() {
            for g in &gens {
                let (pg, qg) = (g.image(p), g.image(q));
                if uf.union(pg, qg).is_some() {
                    queue.push((pg, qg));
                }
            }
        }
        Ok(())
    }
}
