//! Published values that recomputed tables are compared against.

/// `(location, value bound, multiplicity)` of the local maxima of `G_+`.
pub const MAXIMA_PLUS: [(f64, f64, u8); 4] = [(0.0, 9.0, 1), (0.151, 7.701, 2), (0.302, 4.628, 2), (0.448, 1.661, 2)];
pub const MAXIMA_MINUS: [(f64, f64, u8); 4] = [(0.076, 8.662, 2), (0.227, 6.279, 2), (0.377, 3.005, 2), (0.5, 1.0, 1)];

pub const A_RHO: [u64; 7] = [1, 3, 15, 93, 639, 4653, 35169];

/// `(has |G'|, t, j, bound)` at `N = 500`.
pub const Q500: [(bool, u32, u32, f64); 10] = [
    (true, 1, 0, 137081.0),
    (true, 1, 1, 301803.0),
    (true, 2, 0, 703352.0),
    (true, 2, 1, 1_545490.0),
    (true, 3, 0, 4_277432.0),
    (true, 3, 1, 9_398487.0),
    (false, 3, 0, 48351.0),
    (false, 3, 1, 106240.0),
    (false, 4, 0, 334032.0),
    (false, 4, 1, 733944.0),
];

/// `(has |G'|, t, j, bound)` at `N = 400`.
pub const Q400: [(bool, u32, u32, f64); 14] = [
    (true, 1, 0, 112282.0),
    (true, 1, 1, 247274.0),
    (true, 1, 2, 543316.0),
    (true, 2, 0, 580005.0),
    (true, 2, 1, 1_274463.0),
    (true, 2, 2, 2_800281.0),
    (true, 3, 0, 3_550835.0),
    (true, 3, 1, 7_801987.0),
    (true, 3, 2, 17_142718.0),
    (false, 3, 0, 39051.0),
    (false, 3, 1, 85804.0),
    (false, 3, 2, 188530.0),
    (false, 4, 1, 593541.0),
    (false, 4, 2, 1_304143.0),
];

pub const D1_AT_5: f64 = 0.002878492;
pub const D1_PER_INTEGRAL_ERROR: f64 = 0.0009745;
pub const D2_AT_5: f64 = 0.033815603;
pub const D2_PER_INTEGRAL_ERROR: f64 = 0.0071;
pub const D3_AT_5: f64 = 0.18354763424;
pub const D3_SUP4: f64 = 2.82932e14;
pub const D3_PER_INTEGRAL_ERROR: f64 = 0.091;
pub const D3_REQUIRED_STEPS: u64 = 475;

pub const T1_SUP4: [f64; 7] = [9.28687e14, 2.52880e15, 6.81644e15, 1.82039e16, 4.82014e16, 1.28469e17, 3.80117e17];
pub const T1_BUDGETS: [f64; 7] = [0.15, 0.03, 0.005, 0.0005, 0.0002, 0.0002, 0.0002];
pub const T1_STEPS: [u64; 7] = [474, 460, 392, 342, 196, 85, 36];
pub const T1_COEFFS: [f64; 7] = [
    0.381737508,
    -2.087768122,
    -23.85760346,
    -140.6261273,
    -641.9545799,
    -2521.387336,
    -8940.14559,
];
pub const T1_REMAINDER: f64 = 0.0008808;

pub const T2_WEIGHTS: [f64; 9] = [
    3.46227e15, 9.78474e15, 2.73203e16, 7.54351e16, 2.06152e17, 5.5806e17, 1.4977e18, 3.98926e18, 1.05675e19,
];
pub const T2_BUDGETS: [f64; 9] = [
    0.003606534,
    0.001019244,
    0.000142293,
    1.30964e-5,
    8.94756e-7,
    4.84427e-8,
    2.16681e-9,
    8.24499e-11,
    2.7301e-12,
];
pub const T2_COEFFS: [f64; 9] = [
    0.016265345,
    0.084372338,
    0.223408446,
    -0.41545758,
    -8.507038066,
    -57.99608037,
    -288.5739971,
    -1204.823065,
    -4474.521416,
];
pub const T2_REMAINDER: f64 = 0.00000176248;
pub const T2_DELTA: f64 = 0.004784113;

/// Rows `j = 0..=8`: `p^(j)(5.13), p^(j)(5.33), Var(p^(j)), I_{p^(j)}`.
pub const T3: [(f64, f64, Option<f64>, Option<f64>); 9] = [
    (0.0089834050, 0.025709673, Some(0.0250930779), None),
    (0.061152858, 0.102950595, Some(0.086827326), Some(0.12546539)),
    (0.230976823, 0.128352476, Some(0.508943962), Some(0.43413663)),
    (0.188714272, -1.609630427, Some(3.66852346), Some(2.544719808)),
    (-3.968140009, -15.96896377, Some(16.74813082), Some(18.3426173)),
    (-34.41704242, -93.62334897, None, None),
    (-190.4642977, -431.4289106, None, None),
    (-757.3709229, -1652.275206, None, None),
    (-4474.521416, -4474.521416, None, None),
];

pub const T4_WEIGHTS: [f64; 10] = [
    6.89883e15, 1.93082e16, 5.34273e16, 1.46288e17, 3.96656e17, 1.06584e18, 2.84009e18, 7.50943e18, 1.97155e19,
    5.14412e19,
];
pub const T4_BUDGETS: [f64; 10] = [
    0.007186277,
    0.003921976,
    0.00105811,
    0.000188317,
    2.48926e-5,
    2.60863e-6,
    2.2591e-7,
    1.66398e-8,
    1.06486e-9,
    6.01989e-11,
];
pub const T4_COEFFS: [f64; 10] = [
    0.045016622,
    0.070827581,
    -0.6357179,
    -7.162905157,
    -45.0748687,
    -220.5767067,
    -922.6394344,
    -3454.236354,
    -11901.56441,
    -38448.6079,
];
pub const T4_REMAINDER: f64 = 0.0000725269;
pub const T4_DELTA: f64 = 0.0124555;

/// Rows `j = 0..=9`: `p^(j)` at 5.33, 5.56, 5.72, then `Var` and `I` on
/// `[5.33, 5.56]` and on `[5.56, 5.72]`.
#[allow(clippy::type_complexity)]
pub const T5: [(f64, f64, f64, Option<f64>, Option<f64>, Option<f64>, Option<f64>); 10] = [
    (0.0257096753, 0.047052108, 0.034577105, Some(0.0478507836), None, Some(0.0567182135), None),
    (0.102950466, 0.043853873, -0.260773968, Some(0.269289432), Some(0.208046885), None, Some(0.354488834)),
    (0.12835791, -0.915663374, -3.226753649, None, Some(1.170823618), None, None),
    (-1.609886707, -8.882443109, -21.52543175, None, None, None, None),
    (-15.96198625, -53.38561447, -110.7051556, None, None, None, None),
    (-93.94395303, -255.0722573, -483.1895366, None, None, None, None),
    (-427.8265683, -1051.102162, -1870.009287, None, None, None, None),
    (-1864.435452, -3894.340881, -6506.045571, None, None, None, None),
    (-4404.08587, -13247.2656, -19399.0429, None, None, None, None),
    (-38448.6078, -38448.6078, -38448.6078, None, None, None, None),
];

pub const T6_SUP4: [f64; 9] = [
    1.07968e15, 2.93801e15, 7.91604e15, 2.1135e16, 5.59555e16, 1.46998e17, 3.83405e17, 9.93361e17, 2.55779e17,
];
pub const T6_BUDGETS: [f64; 9] = [0.16, 0.062, 0.015, 0.002, 0.002, 0.002, 0.002, 0.002, 0.002];
pub const T6_STEPS: [u64; 9] = [485, 483, 453, 446, 246, 128, 64, 31, 14];
pub const T6_COEFFS: [f64; 9] = [
    -0.982761617,
    -7.57978318,
    -42.74047825,
    -200.2495965,
    -823.1734963,
    -3064.925687,
    -10561.40925,
    -34212.60072,
    -105414.5993,
];
pub const T6_REMAINDER_PRINTED: f64 = 0.011209281;
pub const T6_REMAINDER_BUDGET: f64 = 0.00035;

/// Values of approximate Taylor polynomials quoted in the sign arguments.
pub const P6_AT_5_13: f64 = 0.188694031;
pub const P8_AT_5_13: f64 = 0.008983405;
pub const P9_AT_5_33: f64 = 0.025709673;
pub const P8_AT_5_72: f64 = -0.2607741259;

/// Endpoint derivatives in the chain arguments.
pub const T1_CHAIN_AT_5: [f64; 5] = [-0.806502699, -15.96427771, -103.8163124, -496.9504606, -1940.277873];
pub const T6_CHAIN_AT_5_72: [f64; 7] = [
    -3.226759,
    -21.525764,
    -110.671188,
    -483.626484,
    -1873.40227,
    -6804.70822,
    -19454.5568,
];
