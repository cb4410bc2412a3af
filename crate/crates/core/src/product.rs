//! Finite products of finite spaces.

use crate::error::{size_guard, Error, Result};
use crate::limits;
use crate::space::{generate_from_subbase, FiniteSpace};
use crate::subset::{SetFamily, SubsetBits, MAX_GROUND};

/// Mixed-radix point codec for a product: the point with coordinates
/// `(c_0, …, c_{k-1})` has index `Σ c_i · ∏_{j<i} n_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCodec {
    radices: Vec<usize>,
}

impl ProductCodec {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductCodec { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    /// Number of points in the product.
    pub fn size(&self) -> u128 {
        self.radices.iter().map(|&r| r as u128).product()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.radices.len());
        let mut index = 0;
        let mut stride = 1;
        for (&c, &r) in coords.iter().zip(&self.radices) {
            assert!(c < r);
            index += c * stride;
            stride *= r;
        }
        index
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        self.radices
            .iter()
            .map(|&r| {
                let c = index % r;
                index /= r;
                c
            })
            .collect()
    }

    /// The `i`-th coordinate of the point with the given index.
    pub fn coordinate(&self, index: usize, i: usize) -> usize {
        let stride: usize = self.radices[..i].iter().product();
        index / stride % self.radices[i]
    }
}

/// The product topology, generated by the cylinders `π_i⁻¹(O)`.
pub fn product_space(factors: &[FiniteSpace]) -> Result<(FiniteSpace, ProductCodec)> {
    if factors.is_empty() {
        return Err(Error::Invalid("a product needs at least one factor".into()));
    }
    let codec = ProductCodec::new(factors.iter().map(FiniteSpace::n).collect());
    let size = codec.size();
    size_guard("product ground set", size, limits::max_points() as u128)?;
    size_guard("product ground set", size, MAX_GROUND as u128)?;
    let n = size as usize;
    let mut subbase = Vec::new();
    for (i, factor) in factors.iter().enumerate() {
        for open in factor.opens().iter() {
            let cylinder: SubsetBits = (0..n)
                .filter(|&p| open.contains(codec.coordinate(p, i)))
                .collect();
            subbase.push(cylinder);
        }
    }
    let space = generate_from_subbase(n, &SetFamily::new(subbase))?;
    Ok((space, codec))
}
