//! Total functions between finite ground sets.

use crate::error::{Error, Result};
use crate::subset::SubsetBits;

/// A total map `{0, …, dom_n-1} → {0, …, cod_n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiniteMap {
    cod_n: usize,
    image: Vec<u32>,
}

impl FiniteMap {
    pub fn new(cod_n: usize, image: Vec<u32>) -> Result<Self> {
        if let Some(&v) = image.iter().find(|&&v| v as usize >= cod_n) {
            return Err(Error::ValueOutOfRange {
                value: v as usize,
                cod_n,
            });
        }
        Ok(FiniteMap { cod_n, image })
    }

    pub(crate) fn new_unchecked(cod_n: usize, image: Vec<u32>) -> Self {
        debug_assert!(image.iter().all(|&v| (v as usize) < cod_n));
        FiniteMap { cod_n, image }
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap::new_unchecked(n, (0..n as u32).collect())
    }

    pub fn constant(dom_n: usize, cod_n: usize, c: usize) -> Self {
        assert!(c < cod_n);
        FiniteMap::new_unchecked(cod_n, vec![c as u32; dom_n])
    }

    #[inline]
    pub fn dom_n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn cod_n(&self) -> usize {
        self.cod_n
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    /// `f(a)` for a subset `a` of the domain.
    pub fn image_of(&self, a: SubsetBits) -> SubsetBits {
        a.iter().map(|x| self.apply(x)).collect()
    }

    /// `f⁻¹(b)` for a subset `b` of the codomain.
    pub fn preimage(&self, b: SubsetBits) -> SubsetBits {
        (0..self.dom_n()).filter(|&x| b.contains(self.apply(x))).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FiniteMap) -> Result<FiniteMap> {
        if next.dom_n() != self.cod_n {
            return Err(Error::DomainMismatch {
                expected: self.cod_n,
                found: next.dom_n(),
            });
        }
        Ok(FiniteMap::new_unchecked(
            next.cod_n,
            self.image.iter().map(|&x| next.image[x as usize]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod_n];
        self.image
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }
}

/// All `cod_n^dom_n` maps in lexicographic order of their image arrays.
pub fn all_maps(dom_n: usize, cod_n: usize) -> AllMaps {
    AllMaps {
        cod_n,
        next: if cod_n == 0 && dom_n > 0 {
            None
        } else {
            Some(vec![0; dom_n])
        },
    }
}

pub struct AllMaps {
    cod_n: usize,
    next: Option<Vec<u32>>,
}

impl Iterator for AllMaps {
    type Item = FiniteMap;
    fn next(&mut self) -> Option<FiniteMap> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut advanced = false;
        for slot in succ.iter_mut().rev() {
            if (*slot as usize) + 1 < self.cod_n {
                *slot += 1;
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(FiniteMap::new_unchecked(self.cod_n, cur))
    }
}
