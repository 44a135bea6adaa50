//! Published per-model results, one `[acc, sens, spec, prec, f-measure]` entry
//! per modality in the order CT, GM, JD, WM, ALL.
#![allow(dead_code)]

pub const MODALITIES: [&str; 5] = ["CT", "GM", "JD", "WM", "ALL"];

pub const RNN_TABLE: &[(&str, [[f64; 5]; 5])] = &[
    (
        "RVFL",
        [
            [65.16, 61.3, 68.58, 63.34, 62.3],
            [65.16, 64.71, 65.63, 66.67, 65.68],
            [57.58, 61.3, 54.29, 54.29, 57.58],
            [66.67, 73.08, 62.5, 55.89, 63.34],
            [71.22, 80.0, 61.3, 70.0, 74.67],
        ],
    ),
    (
        "ELM",
        [
            [57.58, 62.5, 52.95, 55.56, 58.83],
            [59.1, 62.86, 54.84, 61.12, 61.98],
            [60.61, 54.84, 65.72, 58.63, 56.67],
            [59.1, 65.72, 51.62, 60.53, 63.02],
            [63.64, 77.42, 51.43, 58.54, 66.67],
        ],
    ),
    (
        "MCVELM",
        [
            [62.13, 56.67, 66.67, 58.63, 57.63],
            [60.61, 62.86, 58.07, 62.86, 62.86],
            [60.61, 58.34, 63.34, 65.63, 61.77],
            [63.64, 65.52, 62.17, 57.58, 61.3],
            [63.64, 58.83, 68.75, 66.67, 62.5],
        ],
    ),
    (
        "MVELM",
        [
            [62.13, 65.72, 58.07, 63.89, 64.79],
            [68.19, 64.87, 72.42, 75.0, 69.57],
            [59.1, 48.84, 78.27, 80.77, 60.87],
            [60.61, 54.55, 66.67, 62.07, 58.07],
            [65.16, 64.71, 65.63, 66.67, 65.68],
        ],
    ),
    (
        "IFRVFL",
        [
            [62.13, 60.61, 63.64, 62.5, 61.54],
            [60.61, 56.25, 64.71, 60.0, 58.07],
            [65.16, 72.5, 53.85, 70.74, 71.61],
            [62.13, 54.55, 69.7, 64.29, 59.02],
            [56.07, 45.72, 67.75, 61.54, 52.46],
        ],
    ),
    (
        "Class-Var-RVFL",
        [
            [57.58, 62.5, 52.95, 55.56, 58.83],
            [59.1, 64.11, 51.86, 65.79, 64.94],
            [60.61, 62.07, 59.46, 54.55, 58.07],
            [62.13, 64.52, 60.0, 58.83, 61.54],
            [56.07, 60.61, 51.52, 55.56, 57.98],
        ],
    ),
    (
        "Total-Var-RVFL",
        [
            [60.61, 53.58, 65.79, 53.58, 53.58],
            [57.58, 62.86, 51.62, 59.46, 61.12],
            [62.13, 64.52, 60.0, 58.83, 61.54],
            [56.07, 54.06, 58.63, 62.5, 57.98],
            [60.61, 100.0, 0.0, 60.61, 75.48],
        ],
    ),
    (
        "GEELM-LDA",
        [
            [60.61, 55.27, 67.86, 70.0, 61.77],
            [60.61, 82.15, 44.74, 52.28, 63.89],
            [65.16, 71.06, 57.15, 69.24, 70.13],
            [62.13, 60.61, 63.64, 62.5, 61.54],
            [59.1, 12.0, 87.81, 37.5, 18.19],
        ],
    ),
    (
        "GEELM-LFDA",
        [
            [57.58, 53.13, 61.77, 56.67, 54.84],
            [65.16, 62.86, 67.75, 68.75, 65.68],
            [66.67, 54.55, 78.79, 72.0, 62.07],
            [60.61, 64.52, 57.15, 57.15, 60.61],
            [59.1, 65.52, 54.06, 52.78, 58.47],
        ],
    ),
    (
        "dRVFL",
        [
            [77.28, 77.78, 76.67, 80.0, 78.88],
            [71.22, 76.48, 65.63, 70.28, 73.24],
            [74.25, 81.49, 69.24, 64.71, 72.14],
            [77.28, 75.76, 78.79, 78.13, 76.93],
            [78.79, 84.62, 75.0, 68.75, 75.87],
        ],
    ),
    (
        "edRVFL",
        [
            [78.79, 78.95, 78.58, 83.34, 81.09],
            [74.25, 69.45, 80.0, 80.65, 74.63],
            [69.7, 65.91, 77.28, 85.3, 74.36],
            [74.25, 74.36, 74.08, 80.56, 77.34],
            [72.73, 78.58, 68.43, 64.71, 70.97],
        ],
    ),
    (
        "BLS",
        [
            [62.13, 64.52, 60.0, 58.83, 61.54],
            [59.1, 65.63, 52.95, 56.76, 60.87],
            [54.55, 54.55, 54.55, 54.55, 54.55],
            [60.61, 44.74, 82.15, 77.28, 56.67],
            [60.61, 64.87, 55.18, 64.87, 64.87],
        ],
    ),
    (
        "NF-BLS",
        [
            [54.55, 66.67, 47.62, 42.11, 51.62],
            [62.13, 61.12, 63.34, 66.67, 63.77],
            [57.58, 45.72, 70.97, 64.0, 53.34],
            [54.55, 64.71, 43.75, 55.0, 59.46],
            [65.16, 64.52, 65.72, 62.5, 63.5],
        ],
    ),
];

pub const HBC_TABLE: &[(&str, [[f64; 5]; 5])] = &[
    (
        "SVM-L",
        [
            [63.64, 67.57, 58.63, 67.57, 67.57],
            [57.58, 55.27, 60.72, 65.63, 60.0],
            [60.61, 57.9, 64.29, 68.75, 62.86],
            [69.7, 62.86, 77.42, 75.87, 68.75],
            [63.64, 55.27, 75.0, 75.0, 63.64],
        ],
    ),
    (
        "SVM-K",
        [
            [63.64, 97.23, 23.34, 60.35, 74.47],
            [57.58, 100.0, 0.0, 57.58, 73.08],
            [51.52, 65.72, 35.49, 53.49, 58.98],
            [60.61, 64.52, 57.15, 57.15, 60.61],
            [56.07, 76.48, 34.38, 55.32, 64.2],
        ],
    ),
    (
        "TSVM-L",
        [
            [62.13, 87.88, 36.37, 58.0, 69.88],
            [59.1, 56.67, 61.12, 54.84, 55.74],
            [60.61, 68.0, 56.1, 48.58, 56.67],
            [63.64, 67.75, 60.0, 60.0, 63.64],
            [62.13, 69.7, 54.55, 60.53, 64.79],
        ],
    ),
    (
        "TSVM-K",
        [
            [66.67, 72.73, 60.61, 64.87, 68.58],
            [62.13, 40.63, 82.36, 68.43, 50.99],
            [60.61, 60.61, 60.61, 60.61, 60.61],
            [62.13, 65.52, 59.46, 55.89, 60.32],
            [54.55, 12.13, 96.97, 80.0, 21.06],
        ],
    ),
    (
        "IFTSVM-L",
        [
            [65.16, 45.46, 84.85, 75.0, 56.61],
            [65.16, 97.06, 31.25, 60.0, 74.16],
            [63.64, 55.56, 69.24, 55.56, 55.56],
            [65.16, 55.89, 75.0, 70.38, 62.3],
            [56.07, 22.59, 85.72, 58.34, 32.56],
        ],
    ),
    (
        "IFTSVM-K",
        [
            [66.67, 60.61, 72.73, 68.97, 64.52],
            [59.1, 21.88, 94.12, 77.78, 34.15],
            [57.58, 86.21, 35.14, 51.03, 64.11],
            [65.16, 65.72, 64.52, 67.65, 66.67],
            [59.1, 46.15, 77.78, 75.0, 57.15],
        ],
    ),
    (
        "LSSVM-L",
        [
            [63.64, 57.58, 69.7, 65.52, 61.3],
            [60.61, 53.13, 67.65, 60.72, 56.67],
            [57.58, 59.46, 55.18, 62.86, 61.12],
            [63.64, 76.93, 55.0, 52.64, 62.5],
            [60.61, 60.0, 61.12, 56.25, 58.07],
        ],
    ),
    (
        "LSSVM-K",
        [
            [66.67, 68.58, 64.52, 68.58, 68.58],
            [59.1, 66.67, 51.52, 57.9, 61.98],
            [51.52, 64.71, 37.5, 52.39, 57.9],
            [65.16, 84.85, 45.46, 60.87, 70.89],
            [53.04, 71.43, 32.26, 54.35, 61.73],
        ],
    ),
    (
        "LSTSVM-L",
        [
            [63.64, 69.7, 57.58, 62.17, 65.72],
            [60.61, 29.42, 93.75, 83.34, 43.48],
            [56.07, 33.34, 78.79, 61.12, 43.14],
            [62.13, 95.13, 8.0, 62.91, 75.73],
            [59.1, 47.37, 75.0, 72.0, 57.15],
        ],
    ),
    (
        "LSTSVM-K",
        [
            [57.58, 100.0, 0.0, 57.58, 73.08],
            [62.13, 22.23, 89.75, 60.0, 32.44],
            [60.61, 3.85, 97.5, 50.0, 7.15],
            [60.61, 100.0, 18.75, 56.67, 72.35],
            [54.55, 100.0, 0.0, 54.55, 70.59],
        ],
    ),
    (
        "Linex-SVM-L",
        [
            [60.61, 53.34, 66.67, 57.15, 55.18],
            [60.61, 58.83, 62.5, 62.5, 60.61],
            [65.16, 58.63, 70.28, 60.72, 59.65],
            [63.64, 55.18, 70.28, 59.26, 57.15],
            [63.64, 73.08, 57.5, 52.78, 61.3],
        ],
    ),
    (
        "Linex-SVM-K",
        [
            [59.1, 65.63, 52.95, 56.76, 60.87],
            [59.1, 100.0, 0.0, 59.1, 74.29],
            [60.61, 100.0, 0.0, 60.61, 75.48],
            [65.16, 100.0, 0.0, 65.16, 78.9],
            [59.1, 100.0, 0.0, 59.1, 74.29],
        ],
    ),
    (
        "Pin-SVM-L",
        [
            [62.13, 48.49, 75.76, 66.67, 56.15],
            [59.1, 54.84, 62.86, 56.67, 55.74],
            [56.07, 59.46, 51.73, 61.12, 60.28],
            [66.67, 59.46, 75.87, 75.87, 66.67],
            [62.13, 83.88, 42.86, 56.53, 67.54],
        ],
    ),
    (
        "Pin-SVM-K",
        [
            [57.58, 100.0, 0.0, 57.58, 73.08],
            [57.58, 100.0, 0.0, 57.58, 73.08],
            [60.61, 100.0, 0.0, 60.61, 75.48],
            [59.1, 67.57, 48.28, 62.5, 64.94],
            [59.1, 100.0, 0.0, 59.1, 74.29],
        ],
    ),
    (
        "Pin-GTSVM-L",
        [
            [56.06, 63.33, 50.0, 51.35, 56.72],
            [54.55, 57.14, 52.63, 47.06, 51.61],
            [65.15, 67.86, 63.16, 57.58, 62.3],
            [66.67, 65.0, 69.23, 76.47, 70.27],
            [62.12, 77.42, 48.57, 57.14, 65.75],
        ],
    ),
    (
        "Pin-GTSVM-K",
        [
            [72.73, 73.33, 72.22, 68.75, 70.97],
            [62.12, 65.52, 59.46, 55.88, 60.32],
            [59.09, 57.58, 60.61, 59.36, 58.46],
            [69.7, 86.67, 55.56, 61.9, 72.22],
            [59.09, 57.14, 61.29, 62.5, 59.7],
        ],
    ),
];

/// `acc[dataset][model]` for one of the tables above.
pub fn accuracy_by_dataset(table: &[(&str, [[f64; 5]; 5])]) -> Vec<Vec<f64>> {
    (0..5).map(|d| table.iter().map(|(_, m)| m[d][0]).collect()).collect()
}

pub fn model_names(table: &[(&str, [[f64; 5]; 5])]) -> Vec<String> {
    table.iter().map(|(n, _)| n.to_string()).collect()
}

/// Published tie-averaged ranks, rows CT, GM, JD, WM, ALL, columns in table order.
pub const RNN_RANKS: [[f64; 13]; 5] = [
    [3.0, 11.0, 5.5, 5.5, 5.5, 11.0, 8.5, 8.5, 11.0, 2.0, 1.0, 5.5, 13.0],
    [4.5, 11.0, 8.0, 3.0, 8.0, 11.0, 13.0, 8.0, 4.5, 2.0, 1.0, 11.0, 6.0],
    [11.5, 8.0, 8.0, 10.0, 4.5, 8.0, 6.0, 4.5, 3.0, 1.0, 2.0, 13.0, 11.5],
    [3.0, 11.0, 4.0, 9.0, 6.0, 6.0, 12.0, 6.0, 9.0, 1.0, 2.0, 9.0, 13.0],
    [3.0, 6.5, 6.5, 4.5, 12.5, 12.5, 8.5, 10.5, 10.5, 1.0, 2.0, 8.5, 4.5],
];

pub const HBC_RANKS: [[f64; 16]; 5] = [
    [7.5, 7.5, 10.5, 3.0, 5.0, 3.0, 7.5, 3.0, 7.5, 14.5, 12.0, 13.0, 10.5, 14.5, 16.0, 1.0],
    [14.0, 14.0, 10.0, 3.0, 1.0, 10.0, 6.0, 10.0, 6.0, 3.0, 6.0, 10.0, 10.0, 14.0, 16.0, 3.0],
    [6.5, 15.5, 6.5, 6.5, 3.0, 11.5, 11.5, 15.5, 13.5, 6.5, 1.5, 6.5, 13.5, 6.5, 1.5, 10.0],
    [1.5, 14.5, 10.0, 12.5, 6.5, 6.5, 10.0, 6.5, 12.5, 14.5, 10.0, 6.5, 3.5, 16.0, 3.5, 1.5],
    [1.5, 12.5, 4.0, 14.5, 12.5, 9.0, 6.0, 16.0, 9.0, 14.5, 1.5, 9.0, 4.0, 9.0, 4.0, 9.0],
];

/// Published average ranks (one decimal).
pub const RNN_AVG_RANKS: [f64; 13] = [5.0, 9.5, 6.4, 6.4, 7.3, 9.7, 9.6, 7.5, 7.6, 1.4, 1.6, 9.4, 9.6];
pub const HBC_AVG_RANKS: [f64; 16] =
    [6.2, 12.8, 8.2, 7.9, 5.6, 8.0, 8.2, 10.2, 9.7, 10.6, 6.2, 9.0, 8.3, 12.0, 8.2, 4.9];

/// Test-set size implied by the published accuracies (multiples of 1/66).
pub const N_TEST: usize = 66;

/// Published win/tie/loss of row model `i + 1` against column model `j < i + 1`.
pub const RNN_WTL: &[&[[usize; 3]]] = &[
    &[[1, 0, 4]],
    &[[1, 0, 4], [3, 2, 0]],
    &[[2, 0, 3], [4, 0, 1], [2, 1, 2]],
    &[[1, 0, 4], [4, 0, 1], [1, 2, 2], [2, 1, 2]],
    &[[1, 0, 4], [1, 3, 1], [0, 1, 4], [2, 0, 3], [0, 2, 3]],
    &[[1, 0, 4], [2, 0, 3], [1, 0, 4], [1, 0, 4], [1, 0, 4], [3, 0, 2]],
    &[[1, 0, 4], [4, 0, 1], [1, 1, 3], [2, 0, 3], [1, 3, 1], [4, 1, 0], [3, 1, 1]],
    &[[1, 1, 3], [3, 1, 1], [2, 0, 3], [1, 1, 3], [3, 0, 2], [3, 1, 1], [3, 0, 2], [2, 1, 2]],
    &[[5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0]],
    &[[5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [5, 0, 0], [2, 0, 3]],
    &[[0, 0, 5], [2, 1, 2], [0, 1, 4], [0, 2, 3], [1, 1, 3], [2, 1, 2], [3, 1, 1], [2, 0, 3], [2, 1, 2], [0, 0, 5], [0, 0, 5]],
    &[[0, 1, 4], [2, 0, 3], [2, 0, 3], [0, 1, 4], [2, 0, 3], [2, 0, 3], [2, 0, 3], [2, 0, 3], [1, 0, 4], [0, 0, 5], [0, 0, 5], [3, 0, 2]],
];

pub const HBC_WTL: &[&[[usize; 3]]] = &[
    &[[3, 2, 0]],
    &[[3, 1, 1], [1, 0, 4]],
    &[[2, 1, 2], [1, 0, 4], [2, 1, 2]],
    &[[2, 0, 3], [0, 1, 4], [1, 0, 4], [1, 0, 4]],
    &[[3, 0, 2], [0, 0, 5], [2, 1, 2], [2, 1, 2], [2, 1, 2]],
    &[[3, 1, 1], [0, 1, 4], [2, 1, 2], [3, 0, 2], [4, 0, 1], [2, 1, 2]],
    &[[3, 0, 2], [1, 1, 3], [2, 1, 2], [3, 1, 1], [3, 1, 1], [2, 3, 0], [3, 0, 2]],
    &[[3, 1, 1], [0, 1, 4], [3, 0, 2], [3, 1, 1], [4, 0, 1], [3, 1, 1], [3, 2, 0], [2, 0, 3]],
    &[[3, 1, 1], [2, 1, 2], [3, 1, 1], [2, 3, 0], [5, 0, 0], [3, 0, 2], [3, 0, 2], [2, 0, 3], [3, 0, 2]],
    &[[2, 1, 2], [1, 0, 4], [1, 1, 3], [2, 0, 3], [3, 0, 2], [2, 0, 3], [1, 2, 2], [2, 0, 3], [1, 1, 3], [1, 0, 4]],
    &[[3, 1, 1], [1, 0, 4], [2, 2, 1], [2, 1, 2], [3, 1, 1], [1, 3, 1], [3, 0, 2], [1, 2, 2], [2, 1, 2], [1, 1, 3], [4, 0, 1]],
    &[[4, 0, 1], [1, 0, 4], [1, 3, 1], [3, 0, 2], [3, 0, 2], [2, 1, 2], [3, 0, 2], [1, 1, 3], [2, 1, 2], [2, 0, 3], [3, 0, 2], [1, 1, 3]],
    &[[3, 2, 0], [2, 1, 2], [4, 1, 0], [3, 1, 1], [4, 0, 1], [3, 1, 1], [4, 0, 1], [3, 0, 2], [3, 1, 1], [2, 2, 1], [5, 0, 0], [3, 2, 0], [4, 0, 1]],
    &[[4, 0, 1], [2, 0, 3], [2, 1, 2], [2, 0, 3], [2, 0, 3], [2, 0, 3], [2, 0, 3], [2, 0, 3], [2, 0, 3], [2, 0, 3], [3, 1, 1], [2, 0, 3], [2, 2, 1], [2, 0, 3]],
    &[[2, 1, 2], [0, 0, 5], [2, 0, 3], [1, 1, 3], [2, 0, 3], [0, 1, 4], [1, 0, 4], [0, 0, 5], [0, 1, 4], [1, 1, 3], [2, 0, 3], [1, 1, 3], [1, 0, 4], [1, 1, 3], [2, 0, 3]],
];
