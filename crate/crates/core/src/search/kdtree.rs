//! Static k-d tree over points of R^4 with a shrinking-radius range query.

const LEAF: usize = 8;

#[derive(Clone, Debug, Default)]
pub struct KdTree {
    points: Vec<[f64; 4]>,
    payload: Vec<u32>,
    split_dim: Vec<u8>,
}

impl KdTree {
    pub fn build(mut items: Vec<([f64; 4], u32)>) -> Self {
        let n = items.len();
        let mut split_dim = vec![0u8; n];
        build_rec(&mut items, &mut split_dim);
        let (points, payload) = items.into_iter().unzip();
        KdTree { points, payload, split_dim }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Calls `f(payload, distance)` for points within the radius, nearest subtrees first.
    /// `f` returns the radius to use from then on, so the query can tighten as it goes.
    pub fn query<F: FnMut(u32, f64) -> f64>(&self, x: &[f64; 4], radius: f64, f: &mut F) -> f64 {
        let mut r = radius;
        self.rec(0, self.points.len(), x, &mut r, f);
        r
    }

    fn rec<F: FnMut(u32, f64) -> f64>(&self, lo: usize, hi: usize, x: &[f64; 4], r: &mut f64, f: &mut F) {
        if hi - lo <= LEAF {
            for i in lo..hi {
                let d2 = dist2(&self.points[i], x);
                if d2 <= *r * *r {
                    *r = f(self.payload[i], d2.sqrt());
                }
            }
            return;
        }
        let mid = (lo + hi) / 2;
        let dim = self.split_dim[mid] as usize;
        let diff = x[dim] - self.points[mid][dim];
        let d2 = dist2(&self.points[mid], x);
        if d2 <= *r * *r {
            *r = f(self.payload[mid], d2.sqrt());
        }
        let (near, far) = if diff < 0.0 { ((lo, mid), (mid + 1, hi)) } else { ((mid + 1, hi), (lo, mid)) };
        self.rec(near.0, near.1, x, r, f);
        if diff * diff <= *r * *r {
            self.rec(far.0, far.1, x, r, f);
        }
    }
}

#[inline]
fn dist2(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]];
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]
}

fn build_rec(items: &mut [([f64; 4], u32)], split_dim: &mut [u8]) {
    let n = items.len();
    if n <= LEAF {
        return;
    }
    let mut best = (0usize, -1.0f64);
    for d in 0..4 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for it in items.iter() {
            lo = lo.min(it.0[d]);
            hi = hi.max(it.0[d]);
        }
        if hi - lo > best.1 {
            best = (d, hi - lo);
        }
    }
    let dim = best.0;
    let mid = n / 2;
    items.select_nth_unstable_by(mid, |a, b| a.0[dim].total_cmp(&b.0[dim]).then(a.1.cmp(&b.1)));
    split_dim[mid] = dim as u8;
    let (left, rest) = items.split_at_mut(mid);
    let (ls, rs) = split_dim.split_at_mut(mid);
    build_rec(left, ls);
    build_rec(&mut rest[1..], &mut rs[1..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn range_query_matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<([f64; 4], u32)> =
            (0..2000).map(|i| ([rng.gen(), rng.gen(), rng.gen(), rng.gen()], i as u32)).collect();
        let tree = KdTree::build(pts.clone());
        for _ in 0..50 {
            let x = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
            let r = 0.2;
            let mut got = Vec::new();
            tree.query(&x, r, &mut |p, _| {
                got.push(p);
                r
            });
            got.sort();
            let mut want: Vec<u32> = pts.iter().filter(|(p, _)| dist2(p, &x).sqrt() <= r).map(|(_, i)| *i).collect();
            want.sort();
            assert_eq!(got, want);
            // shrinking radius finds the nearest neighbour
            let mut best = (f64::INFINITY, 0u32);
            tree.query(&x, f64::INFINITY, &mut |p, d| {
                if d < best.0 {
                    best = (d, p);
                }
                best.0
            });
            let nearest = pts.iter().map(|(p, i)| (dist2(p, &x).sqrt(), *i)).min_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
            assert_eq!(best.1, nearest.1);
        }
    }
}
