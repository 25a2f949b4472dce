use std::fmt;

use fixedbitset::FixedBitSet;

use super::Vertex;

/// Dense membership set over the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Builds a set from vertex ids. Ids `>= n` are an error.
    pub fn from_vertices<I>(n: usize, vertices: I) -> crate::Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = VertexSet::new(n);
        for v in vertices {
            if v as usize >= n {
                return Err(crate::Error::input(format!("vertex {v} out of range for n = {n}")));
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Universe size `n`.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v as usize);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v as usize, false);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones().map(|v| v as Vertex)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Complement within `0..n`.
    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
