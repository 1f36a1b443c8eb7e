//! Dense GF(2) vectors and an incremental row-echelon basis.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)] }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }
}

/// Rows kept reduced against each other's pivots (lowest set bit).
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        match v.lowest() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor(&v);
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

/// Kernel basis of the linear map sending basis vector `j` to `images[j]`.
pub fn kernel(images: &[BitVec], target_len: usize) -> Vec<BitVec> {
    let n = images.len();
    // each row is (image, combination of sources), reduced on image pivots
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        debug_assert!(img.words.len() == BitVec::zeros(target_len).words.len());
        let mut v = img.clone();
        let mut combo = BitVec::zeros(n);
        combo.flip(j);
        for (p, row, rc) in &pivots {
            if v.get(*p) {
                v.xor(row);
                combo.xor(rc);
            }
        }
        match v.lowest() {
            None => out.push(combo),
            Some(p) => pivots.push((p, v, combo)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(len: usize, ones: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::default();
        assert!(e.insert(bv(70, &[0, 65])));
        assert!(e.insert(bv(70, &[65])));
        assert!(!e.insert(bv(70, &[0])));
        assert!(e.contains(&bv(70, &[0, 65])));
        assert!(!e.contains(&bv(70, &[3])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_of_small_map() {
        // e0 -> f0, e1 -> f0, e2 -> 0
        let imgs = vec![bv(1, &[0]), bv(1, &[0]), bv(1, &[])];
        let ker = kernel(&imgs, 1);
        assert_eq!(ker.len(), 2);
        assert!(ker.contains(&bv(3, &[0, 1])));
        assert!(ker.contains(&bv(3, &[2])));
        assert_eq!(bv(3, &[0, 2]).ones().collect::<Vec<_>>(), vec![0, 2]);
    }
}
