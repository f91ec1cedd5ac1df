//! A fixed-length bitset over `0..len`.

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Bitset of length `len` with the given positions set; positions past
    /// the end are ignored.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bitset::new(len);
        for p in positions {
            if p < len {
                b.set(p);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `self |= src << shift`, truncated to `self.len()`.
    pub fn or_shifted(&mut self, src: &Bitset, shift: usize) {
        if shift >= self.len {
            return;
        }
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        let top = (n - ws).min(src.words.len() + 1);
        for i in (0..top).rev() {
            let lo = src.words.get(i).copied().unwrap_or(0);
            let mut w = lo << bs;
            if bs != 0 && i > 0 {
                w |= src.words[i - 1] >> (64 - bs);
            }
            self.words[i + ws] |= w;
        }
        self.trim();
    }

    /// Same bits in a bitset of a different length.
    pub fn resized(&self, len: usize) -> Bitset {
        let mut words = self.words.clone();
        words.resize(len.div_ceil(64), 0);
        let mut b = Bitset { words, len };
        b.trim();
        b
    }

    /// Bit `i` of the result is bit `len − 1 − i` of `self`.
    pub fn reversed(&self) -> Bitset {
        Bitset::from_positions(self.len, self.ones().map(|i| self.len - 1 - i))
    }

    /// Set positions in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}
