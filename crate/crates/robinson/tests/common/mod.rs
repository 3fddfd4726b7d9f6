#![allow(dead_code)]

use robinson::matrix::{load_dense_csv, LoadOptions};
use robinson::sfs::LinearOrder;
use robinson::Matrix;

pub const UNIT: LoadOptions = LoadOptions { scale: 1, shift: false };

/// 7×7 Robinsonian similarity matrix on vertices a..g (0..6); Robinson
/// under the identity.
pub fn example7() -> Matrix {
    let csv = "\
0,7,6,0,0,0,0
7,0,7,3,2,1,1
6,7,0,7,2,2,1
0,3,7,0,3,3,3
0,2,2,3,0,7,5
0,1,2,3,7,0,6
0,1,1,3,5,6,0
";
    load_dense_csv(csv.as_bytes(), &UNIT).unwrap()
}

pub fn cycle(n: usize) -> Matrix {
    let edges = (0..n as u32).map(|i| (i, (i + 1) % n as u32, 1i64));
    Matrix::from_weighted_edges(n, edges).unwrap()
}

/// K_{1,3}: center 0, leaves 1..3.
pub fn claw() -> Matrix {
    Matrix::from_weighted_edges(4, [(0u32, 1u32, 1i64), (0, 2, 1), (0, 3, 1)]).unwrap()
}

/// 0-based LinearOrder from a report's 1-based order.
pub fn order_of(report_order: &[u32]) -> LinearOrder {
    LinearOrder::from_seq(report_order.iter().map(|&v| v - 1).collect()).unwrap()
}

pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}
