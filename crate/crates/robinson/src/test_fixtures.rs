//! Matrices shared by the unit tests.

use crate::matrix::{load_dense_csv, LoadOptions};
use crate::Matrix;

const UNIT: LoadOptions = LoadOptions { scale: 1, shift: false };

/// 7×7 similarity matrix on vertices a..g (here 0..6). Robinsonian but
/// not Robinson as given: the identity order fails on triples like
/// (a, b, d).
pub(crate) fn worked_example_7x7() -> Matrix {
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

/// 12×12 similarity matrix whose original vertex names are
/// 1,2,3,5,7,8,9,11,13,14,17,19 (here 0..11).
pub(crate) fn worked_example_12x12() -> Matrix {
    let csv = "\
0,0,7,3,3,3,0,3,3,4,0,3
0,0,0,7,6,3,8,3,3,0,8,6
7,0,0,3,3,3,0,3,3,8,0,3
3,7,3,0,6,5,7,5,5,3,7,8
3,6,3,6,0,5,6,5,5,3,6,7
3,3,3,5,5,0,4,8,6,5,4,5
0,8,0,7,6,4,0,4,3,0,8,6
3,3,3,5,5,8,4,0,7,5,4,5
3,3,3,5,5,6,3,7,0,5,3,5
4,0,8,3,3,5,0,5,5,0,0,3
0,8,0,7,6,4,8,4,3,0,0,6
3,6,3,8,7,5,6,5,5,3,6,0
";
    load_dense_csv(csv.as_bytes(), &UNIT).unwrap()
}
