//! Suffix automaton over a generated prefix, answering factor queries in O(|w|).

const NONE: u32 = u32::MAX;

pub(crate) struct FactorIndex {
    stride: usize,
    next: Vec<u32>,
    link: Vec<u32>,
    len: Vec<u32>,
    text_len: usize,
}

impl FactorIndex {
    pub(crate) fn build(text: &[u8], alphabet: u8) -> Self {
        let stride = alphabet as usize;
        let cap = 2 * text.len().max(1);
        let mut idx = FactorIndex {
            stride,
            next: Vec::with_capacity(cap * stride),
            link: Vec::with_capacity(cap),
            len: Vec::with_capacity(cap),
            text_len: text.len(),
        };
        idx.push_state(0, NONE);
        let mut last = 0u32;
        for &c in text {
            last = idx.extend(last, c as usize);
        }
        idx
    }

    fn push_state(&mut self, len: u32, link: u32) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.link.push(link);
        self.next.extend(std::iter::repeat_n(NONE, self.stride));
        id
    }

    fn go(&self, state: u32, c: usize) -> u32 {
        self.next[state as usize * self.stride + c]
    }

    fn set(&mut self, state: u32, c: usize, to: u32) {
        self.next[state as usize * self.stride + c] = to;
    }

    fn extend(&mut self, last: u32, c: usize) -> u32 {
        let cur = self.push_state(self.len[last as usize] + 1, NONE);
        let mut p = last;
        while p != NONE && self.go(p, c) == NONE {
            self.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.go(p, c);
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.push_state(self.len[p as usize] + 1, self.link[q as usize]);
                for a in 0..self.stride {
                    let t = self.go(q, a);
                    self.set(clone, a, t);
                }
                while p != NONE && self.go(p, c) == q {
                    self.set(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        cur
    }

    /// True iff `w` occurs in the indexed text.
    pub(crate) fn contains(&self, w: &[u8]) -> bool {
        let mut state = 0u32;
        for &c in w {
            if c as usize >= self.stride {
                return false;
            }
            state = self.go(state, c as usize);
            if state == NONE {
                return false;
            }
        }
        true
    }

    pub(crate) fn text_len(&self) -> usize {
        self.text_len
    }
}
