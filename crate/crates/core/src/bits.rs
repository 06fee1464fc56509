//! Square bit matrices for strict relations.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn or_row_into(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] |= v;
        }
    }

    /// Warshall closure in place.
    pub fn close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.or_row_into(i, k);
                }
            }
        }
    }

    /// First element related to itself, if any.
    pub fn diagonal_hit(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.get(i, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_path() {
        let mut m = BitMatrix::new(70);
        for i in 0..69 {
            m.set(i, i + 1);
        }
        m.close();
        assert!(m.get(0, 69));
        assert!(!m.get(69, 0));
        assert_eq!(m.count(), 70 * 69 / 2);
        assert_eq!(m.diagonal_hit(), None);
    }
}
