use std::ops::Range;

use lzdmw_core::{Symbol, Text};

use crate::{check_k, Family, GenError};

/// Where the parts of a slow-family string lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlowLayout {
    pub k: usize,
    /// Length of the dictionary-priming prefix `s'`.
    pub prefix_len: usize,
    /// `(i, span of x_i)` in order of appearance.
    pub x: Vec<(usize, Range<usize>)>,
    /// `(i, span of z_i)` in order of appearance; the expensive searches
    /// happen inside these spans.
    pub z: Vec<(usize, Range<usize>)>,
    pub separators: usize,
}

struct Builder {
    k: usize,
    out: Vec<Symbol>,
    next_sep: Symbol,
}

impl Builder {
    fn new(k: usize) -> Self {
        Builder {
            k,
            out: Vec::new(),
            next_sep: (k * k) as Symbol,
        }
    }

    fn letter(&self, i: usize, j: usize) -> Symbol {
        ((i - 1) * self.k + (j - 1)) as Symbol
    }

    /// w_i[a..b], 1-based and inclusive; empty when a > b.
    fn wr(&mut self, i: usize, a: usize, b: usize) -> &mut Self {
        for j in a..=b {
            let c = self.letter(i, j);
            self.out.push(c);
        }
        self
    }

    fn wi(&mut self, i: usize) -> &mut Self {
        self.wr(i, 1, self.k)
    }

    /// w_from w_{from+1} ⋯ w_to; empty when from > to.
    fn ws(&mut self, from: usize, to: usize) -> &mut Self {
        for i in from..=to {
            self.wi(i);
        }
        self
    }

    fn wpow(&mut self, e: usize) -> &mut Self {
        for _ in 0..e {
            self.ws(1, self.k);
        }
        self
    }

    fn sep(&mut self) -> &mut Self {
        self.out.push(self.next_sep);
        self.next_sep += 1;
        self
    }

    fn sep2(&mut self) -> &mut Self {
        self.sep().sep()
    }

    fn len(&self) -> usize {
        self.out.len()
    }

    fn finish(self) -> (Text, usize) {
        let seps = self.next_sep as usize - self.k * self.k;
        let text = Text::new(self.out, u64::from(self.next_sep)).expect("symbols below next_sep");
        (text, seps)
    }
}

fn lzd_slow(k: usize) -> (Text, SlowLayout) {
    let mut b = Builder::new(k);
    for i in 1..=k {
        for j in 2..=k {
            b.wr(i, 1, j);
        }
    }
    for i in 1..=k {
        for j in (2..k).rev() {
            b.wr(i, j, k);
        }
    }
    for first in (1..=k - 2).rev() {
        b.ws(first, k - 1);
    }
    b.ws(1, k);
    let mut e = 2;
    while e <= k {
        b.wpow(e);
        e *= 2;
    }
    for j in 2..=k {
        b.wr(k, j, k).wpow(k);
    }
    let prefix_len = b.len();

    let (mut xs, mut zs) = (Vec::new(), Vec::new());
    for i in 1..=k - 2 {
        let x0 = b.len();
        for j in 2..=k {
            if i > 1 && j < k {
                // u_{i,j} = (w_k[j..k] w_1⋯w_{i-2} w_{i-1}[1..j]) (w_{i-1}[j+1..k]) u'_{i,j}
                b.wr(k, j, k).ws(1, i - 2).wr(i - 1, 1, j);
                b.wr(i - 1, j + 1, k);
            }
            // u'_{i,j} = w_k[j..k] w_1⋯w_{i-1} w_i[1..j]
            b.wr(k, j, k).ws(1, i - 1).wr(i, 1, j);
            b.sep2();
        }
        for j in 2..=k {
            // v_{i,j}
            b.wr(i, j, k).ws(i + 1, k - 1);
            b.wr(i, j, k).ws(i + 1, k - 1).wr(k, 1, j - 1);
            b.sep2();
        }
        xs.push((i, x0..b.len()));
        let z0 = b.len();
        b.wr(i, 2, k).ws(i + 1, k).wpow(k - 2).ws(1, i);
        zs.push((i, z0..b.len()));
        b.sep2();
    }
    let (text, separators) = b.finish();
    (
        text,
        SlowLayout {
            k,
            prefix_len,
            x: xs,
            z: zs,
            separators,
        },
    )
}

fn lzmw_slow(k: usize) -> (Text, SlowLayout) {
    let mut b = Builder::new(k);
    for i in 1..=k {
        for j in 2..=k {
            b.wr(i, 1, j).sep();
        }
    }
    for i in 1..=k {
        for j in (2..k).rev() {
            b.wr(i, j, k).sep();
        }
    }
    for first in (1..=k - 2).rev() {
        b.ws(first, k - 1).sep();
    }
    b.ws(1, k).sep();
    let mut e = 2;
    while e <= k {
        b.wpow(e).sep();
        e *= 2;
    }
    for j in 2..=k {
        b.wr(k, j, k).wpow(k).sep();
    }
    let prefix_len = b.len();
    for j in 2..=k {
        // y_j = w_k[j..k] w_1 ◇ w_k[j..k] w_1 w_2[1..j] ◇
        b.wr(k, j, k).wi(1).sep();
        b.wr(k, j, k).wi(1).wr(2, 1, j).sep();
    }

    let (mut xs, mut zs) = (Vec::new(), Vec::new());
    for i in (4..=k - 2).step_by(2) {
        let x0 = b.len();
        for j in 2..k {
            // t_{i,j} = w_{i-2}[j+1..k] w_{i-1}[1..j] ◇ w_{i-1}[j+1..k] w_i[1..j]
            b.wr(i - 2, j + 1, k).wr(i - 1, 1, j).sep();
            b.wr(i - 1, j + 1, k).wr(i, 1, j).sep();
        }
        for j in 2..=k {
            // u_{i,j} = (w_k[j..k] w_1⋯w_{i-3} w_{i-2}[1..j]) (w_{i-2}[j+1..k] w_{i-1}[1..j])
            b.wr(k, j, k).ws(1, i - 3).wr(i - 2, 1, j);
            b.wr(i - 2, j + 1, k).wr(i - 1, 1, j).sep();
        }
        for j in 2..=k {
            // v_{i,j} = w_i[j..k] w_{i+1}⋯w_{k-1} ◇ w_i[j..k] w_{i+1}⋯w_{k-1} w_k[1..j-1]
            b.wr(i, j, k).ws(i + 1, k - 1).sep();
            b.wr(i, j, k).ws(i + 1, k - 1).wr(k, 1, j - 1).sep();
        }
        xs.push((i, x0..b.len()));
        let z0 = b.len();
        b.wr(i, 2, k).ws(i + 1, k).wpow(k - 2).ws(1, i);
        zs.push((i, z0..b.len()));
        b.sep();
    }
    let (text, separators) = b.finish();
    (
        text,
        SlowLayout {
            k,
            prefix_len,
            x: xs,
            z: zs,
            separators,
        },
    )
}

pub fn gen_lzd_slow(k: usize) -> Result<Text, GenError> {
    Ok(slow_layout(Family::LzdSlow, k)?.0)
}

pub fn gen_lzmw_slow(k: usize) -> Result<Text, GenError> {
    Ok(slow_layout(Family::LzmwSlow, k)?.0)
}

/// A slow-family string together with its layout. `family` must be
/// [`Family::LzdSlow`] or [`Family::LzmwSlow`].
pub fn slow_layout(family: Family, k: usize) -> Result<(Text, SlowLayout), GenError> {
    check_k(family, k)?;
    match family {
        Family::LzdSlow => Ok(lzd_slow(k)),
        Family::LzmwSlow => Ok(lzmw_slow(k)),
        _ => Err(GenError::BadK {
            k,
            family,
            reason: "not a slow family",
        }),
    }
}
