//! Published reference tables, pressures in units of 1e4 Pa unless noted.

pub const T_1_2_1: &[&[f64]] = &[
    &[24.87, 24.83, 24.61, 24.09, 23.98, 23.87, 23.23, 22.71, 22.26],
    &[24.66, 24.21, 23.76, 23.66, 23.08, 22.76, 22.52, 21.78, 21.18],
    &[24.5, 23.72, 23.12, 23.28, 22.35, 21.96, 22.11, 21.06, 20.46],
    &[24.38, 23.32, 22.66, 22.96, 21.77, 21.41, 21.69, 20.53, 20.02],
    &[24.3, 23.01, 22.33, 22.69, 21.33, 21.06, 21.35, 20.16, 19.81],
    &[24.26, 22.78, 22.13, 22.48, 20.99, 20.88, 21.09, 19.94, 19.78],
];
/// (ell, ell1, beta, G_ut/G0) per column.
pub const T_1_2_1_COLUMNS: &[(f64, f64, f64, f64)] = &[
    (30000.0, 35000.0, 0.0009, 0.1),
    (30000.0, 35000.0, 0.0016, 0.3),
    (30000.0, 35000.0, 0.0025, 0.5),
    (40000.0, 45000.0, 0.0013, 0.1),
    (40000.0, 45000.0, 0.0025, 0.3),
    (40000.0, 45000.0, 0.0041, 0.5),
    (70000.0, 75000.0, 0.0021, 0.1),
    (70000.0, 75000.0, 0.0037, 0.3),
    (70000.0, 75000.0, 0.0058, 0.5),
];
pub const T_2_1_1: &[&[f64]] = &[
    &[13.85, 13.63, 13.4, 13.16, 12.91, 12.65, 12.38, 12.1, 11.81, 11.51, 11.19, 10.85],
    &[13.84, 13.6, 13.35, 13.09, 12.83, 12.55, 12.26, 11.96, 11.64, 11.31, 10.97, 10.61],
    &[13.82, 13.57, 13.3, 13.02, 12.73, 12.43, 12.12, 11.79, 11.45, 11.1, 10.73, 10.34],
    &[13.81, 13.53, 13.24, 12.94, 12.63, 12.31, 11.97, 11.62, 11.25, 10.87, 10.47, 10.05],
    &[13.8, 13.49, 13.18, 12.86, 12.52, 12.18, 11.81, 11.43, 11.04, 10.62, 10.19, 9.74],
    &[13.78, 13.46, 13.12, 12.77, 12.41, 12.03, 11.64, 11.23, 10.8, 10.36, 9.89, 9.4],
    &[13.76, 13.41, 13.05, 12.67, 12.28, 11.88, 11.45, 11.01, 10.55, 10.07, 9.57, 9.04],
    &[13.74, 13.37, 12.97, 12.57, 12.15, 11.71, 11.25, 10.78, 10.28, 9.76, 9.22, 8.65],
    &[13.72, 13.32, 12.89, 12.46, 12.0, 11.53, 11.04, 10.52, 9.99, 9.42, 8.84, 8.22],
    &[13.7, 13.26, 12.81, 12.33, 11.84, 11.33, 10.8, 10.25, 9.67, 9.06, 8.43, 7.77],
    &[13.68, 13.2, 12.71, 12.2, 11.67, 11.12, 10.55, 9.95, 9.33, 8.67, 7.99, 7.28],
    &[13.65, 13.14, 12.61, 12.06, 11.49, 10.9, 10.28, 9.63, 8.96, 8.25, 7.52, 6.75],
    &[13.62, 13.07, 12.5, 11.91, 11.29, 10.65, 9.98, 9.29, 8.56, 7.8, 7.01, 6.18],
];
pub const T_2_1_2: &[&[f64]] = &[
    &[13.89, 13.72, 13.56, 13.38, 13.2, 13.01, 12.81, 12.6, 12.39, 12.16, 11.92, 11.68],
    &[13.88, 13.7, 13.52, 13.33, 13.13, 12.93, 12.71, 12.49, 12.26, 12.01, 11.76, 11.49],
    &[13.87, 13.68, 13.48, 13.28, 13.06, 12.84, 12.61, 12.37, 12.12, 11.86, 11.58, 11.3],
    &[13.86, 13.65, 13.44, 13.22, 12.99, 12.75, 12.5, 12.24, 11.97, 11.69, 11.39, 11.08],
    &[13.85, 13.63, 13.4, 13.16, 12.91, 12.65, 12.38, 12.1, 11.81, 11.51, 11.19, 10.85],
    &[13.84, 13.6, 13.35, 13.09, 12.83, 12.55, 12.26, 11.96, 11.64, 11.31, 10.97, 10.61],
    &[13.82, 13.57, 13.3, 13.02, 12.73, 12.43, 12.12, 11.79, 11.45, 11.1, 10.73, 10.34],
    &[13.81, 13.53, 13.24, 12.94, 12.63, 12.31, 11.97, 11.62, 11.25, 10.87, 10.47, 10.05],
    &[13.8, 13.49, 13.18, 12.86, 12.52, 12.18, 11.81, 11.43, 11.04, 10.62, 10.19, 9.74],
    &[13.78, 13.46, 13.12, 12.77, 12.41, 12.03, 11.64, 11.23, 10.8, 10.36, 9.89, 9.4],
    &[13.76, 13.41, 13.05, 12.67, 12.28, 11.88, 11.45, 11.01, 10.55, 10.07, 9.57, 9.04],
    &[13.74, 13.37, 12.97, 12.57, 12.15, 11.71, 11.25, 10.78, 10.28, 9.76, 9.22, 8.65],
    &[13.72, 13.32, 12.89, 12.46, 12.0, 11.53, 11.04, 10.52, 9.99, 9.42, 8.84, 8.22],
];
pub const T_2_1_3: &[&[f64]] = &[
    &[13.92, 13.8, 13.67, 13.54, 13.41, 13.27, 13.12, 12.97, 12.81, 12.64, 12.47, 12.29],
    &[13.91, 13.78, 13.65, 13.51, 13.36, 13.21, 13.05, 12.89, 12.71, 12.53, 12.35, 12.15],
    &[13.9, 13.76, 13.62, 13.47, 13.31, 13.15, 12.98, 12.8, 12.61, 12.42, 12.22, 12.0],
    &[13.9, 13.74, 13.59, 13.42, 13.25, 13.08, 12.89, 12.7, 12.5, 12.29, 12.08, 11.85],
    &[13.89, 13.72, 13.56, 13.38, 13.2, 13.01, 12.81, 12.6, 12.39, 12.16, 11.92, 11.68],
    &[13.88, 13.7, 13.52, 13.33, 13.13, 12.93, 12.71, 12.49, 12.26, 12.01, 11.76, 11.49],
    &[13.87, 13.68, 13.48, 13.28, 13.06, 12.84, 12.61, 12.37, 12.12, 11.86, 11.58, 11.3],
    &[13.86, 13.65, 13.44, 13.22, 12.99, 12.75, 12.5, 12.24, 11.97, 11.69, 11.39, 11.08],
    &[13.85, 13.63, 13.4, 13.16, 12.91, 12.65, 12.38, 12.1, 11.81, 11.51, 11.19, 10.85],
    &[13.84, 13.6, 13.35, 13.09, 12.83, 12.55, 12.26, 11.96, 11.64, 11.31, 10.97, 10.61],
    &[13.82, 13.57, 13.3, 13.02, 12.73, 12.43, 12.12, 11.79, 11.45, 11.1, 10.73, 10.34],
    &[13.81, 13.53, 13.24, 12.94, 12.63, 12.31, 11.97, 11.62, 11.25, 10.87, 10.47, 10.05],
    &[13.8, 13.49, 13.18, 12.86, 12.52, 12.18, 11.81, 11.43, 11.04, 10.62, 10.19, 9.74],
];
/// Pressures in Pa; rows follow RING_XS, columns RING_TS.
pub const T_2_2_1: &[&[f64]] = &[
    &[122717.5, 110478.6, 81094.8],
    &[146064.4, 134445.6, 105061.8],
    &[186412.1, 176006.9, 146623.1],
    &[229710.7, 220960.7, 191576.9],
    &[254914.2, 247478.2, 218094.4],
    &[264319.1, 257726.5, 228342.7],
    &[260046.5, 253743.6, 224359.8],
    &[251713.7, 245279.8, 215896.0],
    &[231199.6, 224097.4, 194713.6],
    &[203327.0, 195052.9, 165669.2],
    &[158388.6, 147974.3, 118590.6],
    &[122357.1, 110108.7, 80724.91],
];
pub const T_4_2_1: &[&[f64]] = &[
    &[52.23, 50.58, 49.3, 48.21, 47.25, 46.38, 45.58, 44.83, 44.13],
    &[52.1, 50.5, 49.24, 48.16, 47.21, 46.35, 45.55, 44.81, 44.11],
    &[49.72, 48.34, 47.18, 46.18, 45.27, 44.44, 43.67, 42.95, 42.27],
    &[47.11, 46.29, 45.45, 44.64, 43.88, 43.16, 42.48, 41.83, 41.21],
    &[43.69, 43.33, 42.83, 42.28, 42.01, 41.14, 40.58, 40.04, 39.51],
    &[40.0, 39.88, 39.64, 39.31, 38.93, 38.53, 38.1, 37.67, 37.24],
    &[36.25, 36.22, 36.13, 35.96, 35.73, 35.47, 35.17, 34.85, 34.51],
    &[32.5, 32.49, 32.46, 32.39, 32.27, 32.1, 31.9, 31.67, 31.41],
    &[28.75, 28.75, 28.74, 28.71, 28.64, 28.54, 28.4, 28.22, 28.01],
    &[26.5, 26.5, 26.49, 26.47, 26.42, 26.34, 26.21, 26.05, 25.86],
    &[25.0, 25.0, 24.99, 24.97, 24.93, 24.84, 24.72, 24.57, 24.37],
];
pub const T_4_2_2: &[&[f64]] = &[
    &[55.0, 54.9, 54.66, 54.34, 53.96, 53.56, 53.14, 52.71, 52.28],
    &[53.5, 53.38, 53.14, 52.81, 52.43, 52.03, 51.6, 51.17, 50.74],
    &[51.23, 51.05, 50.76, 50.4, 50.0, 49.59, 49.16, 48.73, 48.29],
    &[47.34, 46.93, 46.49, 46.05, 45.61, 45.17, 44.73, 44.29, 43.85],
    &[43.05, 42.35, 41.76, 41.23, 40.75, 40.28, 39.82, 39.38, 38.93],
    &[37.95, 37.1, 36.45, 35.89, 35.38, 34.9, 34.44, 33.99, 33.54],
    &[35.55, 34.85, 34.26, 33.73, 33.25, 32.78, 32.32, 31.87, 31.43],
    &[32.33, 31.93, 31.49, 31.05, 30.61, 30.17, 29.73, 29.29, 28.84],
    &[28.72, 28.54, 28.25, 27.89, 27.5, 27.09, 26.66, 26.23, 25.79],
    &[26.49, 26.38, 26.13, 25.8, 25.02, 25.02, 24.6, 24.17, 23.74],
    &[24.99, 24.89, 24.66, 24.33, 23.96, 23.49, 23.14, 22.71, 22.27],
];
pub const T_4_2_3: &[&[f64]] = &[
    &[55.0, 55.0, 54.99, 54.97, 54.93, 54.84, 54.72, 54.57, 54.37],
    &[53.5, 53.5, 53.49, 53.47, 53.42, 53.34, 53.21, 53.05, 52.86],
    &[51.25, 51.25, 51.24, 51.21, 51.14, 51.04, 50.9, 50.72, 50.51],
    &[47.5, 47.49, 47.46, 47.38, 47.26, 47.1, 46.9, 46.67, 46.41],
    &[43.75, 43.72, 43.62, 43.45, 43.23, 42.96, 42.67, 42.35, 42.01],
    &[39.99, 39.88, 39.63, 39.3, 38.93, 38.52, 38.1, 37.67, 37.24],
    &[36.18, 35.83, 35.32, 34.77, 34.2, 33.64, 33.08, 32.54, 32.0],
    &[32.1, 31.28, 30.44, 29.64, 28.88, 28.16, 27.48, 26.83, 26.21],
    &[27.22, 25.83, 24.68, 23.67, 22.77, 21.94, 21.17, 20.45, 19.77],
    &[23.56, 21.96, 20.7, 19.62, 18.67, 17.81, 17.01, 16.27, 15.57],
    &[22.23, 20.58, 19.3, 18.21, 17.25, 16.38, 15.58, 14.83, 14.13],
];
pub const T_4_1_2: &[&[f64]] = &[
    &[13.36, 14.13, 14.58, 15.02, 15.46, 15.91, 16.35, 16.79, 17.24, 17.68, 18.13],
    &[12.82, 13.22, 13.67, 14.11, 14.55, 15.0, 15.44, 15.89, 16.33, 16.77, 17.22],
    &[12.19, 12.47, 12.91, 13.36, 13.8, 14.24, 14.69, 15.13, 15.57, 16.02, 16.46],
];
pub const T_4_1_3: &[&[f64]] = &[
    &[12.19, 11.77, 11.32, 10.87, 10.43, 9.98, 9.54, 9.1, 8.65, 8.21, 7.77],
    &[11.56, 11.03, 10.59, 10.15, 9.7, 9.26, 8.81, 8.37, 7.93, 7.48, 7.04],
    &[11.24, 10.86, 10.42, 9.97, 9.53, 9.09, 8.64, 8.2, 7.75, 7.31, 6.87],
];
pub const T_4_1_4: &[&[f64]] = &[
    &[11.24, 10.96, 10.52, 10.08, 9.63, 9.19, 8.74, 8.3, 7.86, 7.41, 6.97],
    &[10.86, 10.46, 10.01, 9.57, 9.13, 8.68, 8.24, 7.8, 7.35, 6.91, 6.46],
    &[10.4, 9.63, 9.19, 8.74, 8.3, 7.85, 7.41, 6.97, 6.52, 6.08, 5.63],
];
/// Relief tables: t columns and x rows.
pub const RELIEF_TS: [f64; 12] = [50.0, 100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0, 450.0, 500.0, 550.0, 600.0];
pub const RELIEF_LEAKS: [f64; 3] = [5e3, 15e3, 25e3];

pub const RING_XS: [f64; 12] =
    [0.0, 1000.0, 3000.0, 6000.0, 9000.0, 12000.0, 15000.0, 17000.0, 20000.0, 23000.0, 27000.0, 30000.0];
pub const RING_TS: [f64; 3] = [50.0, 300.0, 900.0];

pub const PRE_XS: [f64; 11] = [0.0, 5e3, 12.5e3, 25e3, 37.5e3, 50e3, 62.5e3, 75e3, 87.5e3, 95e3, 1e5];
pub const PRE_TS: [f64; 9] = [100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0, 900.0];
pub const PRE_LEAKS: [f64; 3] = [5e3, 5e4, 9.5e4];

/// Rows x = 0/5/10, 10/14.5/20, 20/25/30 km; columns a = 0..600 s step 60.
pub const POST_XS: [[f64; 3]; 3] = [[0.0, 5e3, 1e4], [1e4, 1.45e4, 2e4], [2e4, 2.5e4, 3e4]];

/// Same rows sampled at a = 0, 120, ..., 600 s.
pub const T_2_5_1: &[&[f64]] = &[
    &[13.36, 14.58, 15.46, 16.35, 17.24, 18.13],
    &[12.82, 13.67, 14.55, 15.44, 16.33, 17.22],
    &[12.19, 12.91, 13.8, 14.69, 15.57, 16.46],
];
pub const T_2_5_2: &[&[f64]] = &[
    &[12.19, 10.59, 9.7, 8.81, 7.93, 7.04],
    &[11.56, 10.52, 9.63, 8.74, 7.86, 6.97],
    &[11.24, 10.01, 9.13, 8.24, 7.35, 6.46],
];
pub const T_2_5_3: &[&[f64]] = &[
    &[11.24, 10.52, 9.63, 8.74, 7.86, 6.97],
    &[10.86, 10.01, 9.13, 8.24, 7.35, 6.46],
    &[10.4, 9.19, 8.3, 7.41, 6.52, 5.63],
];

/// New steady profile after the connectors open; sections I, II, III at
/// five equally spaced points each.
pub const T_4_3_1: [[f64; 5]; 3] =
    [[13.09, 12.91, 12.73, 12.55, 12.38], [12.38, 12.27, 12.17, 12.06, 11.96], [11.96, 11.74, 11.53, 11.31, 11.1]];

/// t, then (P(0), P(L)) for leaks at 5, 50 and 95 km.
pub const T_4_4_1: &[[f64; 7]] = &[
    [100.0, 52.23, 25.0, 55.0, 24.99, 55.0, 22.23],
    [200.0, 50.58, 25.0, 54.9, 24.89, 55.0, 20.58],
    [300.0, 49.3, 24.99, 54.66, 24.66, 54.99, 19.3],
    [400.0, 48.21, 24.97, 54.34, 24.33, 54.97, 18.21],
    [500.0, 47.25, 24.93, 53.96, 23.96, 54.925, 17.25],
    [600.0, 46.38, 24.84, 53.56, 23.49, 54.84, 16.38],
    [700.0, 45.58, 24.72, 53.14, 23.14, 54.72, 15.58],
    [800.0, 44.83, 24.57, 52.71, 22.71, 54.565, 14.84],
    [900.0, 44.13, 24.37, 52.28, 22.27, 54.37, 14.14],
];

/// t, then (P(0), P(L)) for leaks at 5, 15 and 25 km on the 30 km line.
pub const T_4_4_2: &[[f64; 7]] = &[
    [60.0, 13.37, 10.97, 13.83, 10.83, 13.97, 10.37],
    [120.0, 12.95, 10.79, 13.54, 10.54, 13.79, 9.95],
    [180.0, 12.61, 10.55, 13.24, 10.24, 13.55, 9.61],
    [240.0, 12.29, 10.27, 12.95, 9.95, 13.27, 9.29],
    [300.0, 11.99, 9.98, 12.66, 9.66, 12.98, 8.99],
    [360.0, 11.70, 9.69, 12.36, 9.36, 12.69, 8.70],
    [420.0, 11.40, 9.40, 12.07, 9.07, 12.40, 8.40],
    [480.0, 11.11, 9.11, 11.77, 8.77, 12.11, 8.11],
    [540.0, 10.81, 8.81, 11.48, 8.48, 11.81, 7.81],
    [600.0, 10.52, 8.52, 11.19, 8.19, 11.52, 7.52],
];
pub const SHORT_LEAKS: [f64; 3] = [5e3, 15e3, 25e3];

/// (t, G1/G0, junction x, relative error).
pub const T_2_2_5: &[(f64, f64, f64, f64)] = &[
    (50.0, 1.0, 13372.0, 0.005),
    (100.0, 1.05, 13407.3, 0.008),
    (150.0, 1.1, 13442.8, 0.011),
    (250.0, 1.15, 13478.3, 0.013),
    (300.0, 1.2, 13513.9, 0.016),
    (400.0, 1.25, 13549.6, 0.018),
    (450.0, 1.3, 13585.3, 0.021),
    (500.0, 1.35, 13621.2, 0.024),
    (550.0, 1.4, 13657.1, 0.026),
    (600.0, 1.45, 13693.1, 0.029),
    (650.0, 1.5, 13729.2, 0.031),
    (700.0, 1.55, 13765.3, 0.034),
];
/// Reference coordinate the relative-error column is measured from.
pub const JUNCTION_BASE: f64 = 13300.0;

/// (beta, ell, t1) rows of the valve timing table.
pub const T_1_2_3: &[(f64, f64, f64)] = &[
    (0.0057, 30e3, 224.0),
    (0.0057, 40e3, 226.0),
    (0.0057, 70e3, 237.0),
    (0.0075, 30e3, 164.0),
    (0.0075, 40e3, 168.0),
    (0.0075, 70e3, 175.0),
    (0.0099, 30e3, 122.0),
    (0.0099, 40e3, 125.0),
    (0.0099, 70e3, 131.0),
];
pub const CALIBRATION_INDICATOR: f64 = 0.28;

/// Localization phi at t = 100..600 s.
pub const PHI_COLUMN: [(f64, f64); 6] =
    [(100.0, 0.27), (200.0, 0.36), (300.0, 0.45), (400.0, 0.53), (500.0, 0.59), (600.0, 0.66)];
/// (true leak, estimate at t = 300 s, relative tolerance).
pub const LOCALIZATION: [(f64, f64, f64); 3] = [(5e3, 5512.41, 0.10), (5e4, 5e4, 0.0), (9.5e4, 94800.88, 0.02)];

/// Telescopic reuse costs at K = 0.2: (reused km, cost).
pub const T_3_3_1: [(u32, i64); 3] = [(0, 3000), (3, 2190), (10, 8000)];
