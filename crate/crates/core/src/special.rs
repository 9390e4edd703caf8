//! Error-function family and the heat kernel.
//!
//! `erf` and `erfc` follow the classic fdlibm rational approximations. The
//! scaled complement `erfcx(y) = exp(y^2) erfc(y)` reuses the same rational
//! fits with the Gaussian factor cancelled analytically, so it stays finite
//! and accurate far beyond the point where `erfc` underflows.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// 1/sqrt(pi).
pub const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const ERX: f64 = 8.450_629_115_104_675_292_97e-01;
const EFX: f64 = 1.283_791_670_955_125_863_16e-01;
const EFX8: f64 = 1.027_033_336_764_100_690_53e+00;

const PP: [f64; 5] = [
    1.283_791_670_955_125_585_61e-01,
    -3.250_421_072_470_014_993_70e-01,
    -2.848_174_957_559_851_047_66e-02,
    -5.770_270_296_489_441_591_57e-03,
    -2.376_301_665_665_016_260_84e-05,
];
const QQ: [f64; 5] = [
    3.979_172_239_591_553_528_19e-01,
    6.502_224_998_876_729_444_85e-02,
    5.081_306_281_875_765_627_76e-03,
    1.324_947_380_043_216_445_26e-04,
    -3.960_228_278_775_368_123_20e-06,
];
const PA: [f64; 7] = [
    -2.362_118_560_752_659_440_77e-03,
    4.148_561_186_837_483_316_66e-01,
    -3.722_078_760_357_013_238_47e-01,
    3.183_466_199_011_617_536_74e-01,
    -1.108_946_942_823_966_774_76e-01,
    3.547_830_432_561_823_593_71e-02,
    -2.166_375_594_868_790_843_00e-03,
];
const QA: [f64; 6] = [
    1.064_208_804_008_442_282_86e-01,
    5.403_979_177_021_710_489_37e-01,
    7.182_865_441_419_626_628_68e-02,
    1.261_712_198_087_616_421_12e-01,
    1.363_708_391_202_905_073_62e-02,
    1.198_449_984_679_910_741_70e-02,
];
const RA: [f64; 8] = [
    -9.864_944_034_847_148_227_05e-03,
    -6.938_585_727_071_817_643_72e-01,
    -1.055_862_622_532_329_098_14e+01,
    -6.237_533_245_032_600_603_96e+01,
    -1.623_966_694_625_734_703_55e+02,
    -1.846_050_929_067_110_359_94e+02,
    -8.128_743_550_630_659_342_46e+01,
    -9.814_329_344_169_145_485_92e+00,
];
const SA: [f64; 8] = [
    1.965_127_166_743_925_712_92e+01,
    1.376_577_541_435_190_426_00e+02,
    4.345_658_774_752_292_288_21e+02,
    6.453_872_717_332_678_803_36e+02,
    4.290_081_400_275_678_333_86e+02,
    1.086_350_055_417_794_351_34e+02,
    6.570_249_770_319_281_701_35e+00,
    -6.042_441_521_485_809_874_38e-02,
];
const RB: [f64; 7] = [
    -9.864_942_924_700_099_285_97e-03,
    -7.992_832_376_805_230_065_74e-01,
    -1.775_795_491_775_475_198_89e+01,
    -1.606_363_848_558_219_160_62e+02,
    -6.375_664_433_683_896_277_22e+02,
    -1.025_095_131_611_077_249_54e+03,
    -4.835_191_916_086_513_970_19e+02,
];
const SB: [f64; 7] = [
    3.033_806_074_348_245_829_24e+01,
    3.257_925_129_965_739_188_26e+02,
    1.536_729_586_084_436_959_94e+03,
    3.199_858_219_508_595_539_08e+03,
    2.553_050_406_433_164_425_83e+03,
    4.745_285_412_069_553_672_15e+02,
    -2.244_095_244_658_581_833_62e+01,
];

/// Horner evaluation of `c[0] + c[1] s + ...`.
#[inline]
fn horner(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * s + ci)
}

/// Horner evaluation of `1 + c[0] s + c[1] s^2 + ...`.
#[inline]
fn horner1(c: &[f64], s: f64) -> f64 {
    1.0 + s * horner(c, s)
}

/// Small-argument rational `erf(x)/x - 1` for `|x| < 0.84375`.
#[inline]
fn small_ratio(x: f64) -> f64 {
    let z = x * x;
    horner(&PP, z) / horner1(&QQ, z)
}

/// `erf(x) - erx` for `0.84375 <= x < 1.25`.
#[inline]
fn mid_ratio(x: f64) -> f64 {
    let s = x - 1.0;
    horner(&PA, s) / horner1(&QA, s)
}

/// `log(x erfcx(x)) + 0.5625` for `x >= 1.25`.
#[inline]
fn tail_log(x: f64) -> f64 {
    let s = 1.0 / (x * x);
    if x < 1.0 / 0.35 {
        horner(&RA, s) / horner1(&SA, s)
    } else {
        horner(&RB, s) / horner1(&SB, s)
    }
}

/// Error function with the standard `2/sqrt(pi)` normalization.
pub fn erf(y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    let x = y.abs();
    let r = if x < 0.84375 {
        if x < 3.725_290_298_461_914e-9 {
            if x < 2.848_094_538_889_218e-306 {
                0.125 * (8.0 * x + EFX8 * x)
            } else {
                x + EFX * x
            }
        } else {
            x + x * small_ratio(x)
        }
    } else if x < 1.25 {
        ERX + mid_ratio(x)
    } else if x >= 6.0 {
        1.0
    } else {
        1.0 - erfc_tail(x)
    };
    r.copysign(y)
}

/// `erfc(x)` for `x >= 1.25`, using a truncated `x` to keep `exp(-x^2)` exact.
#[inline]
fn erfc_tail(x: f64) -> f64 {
    if x >= 28.0 {
        return 0.0;
    }
    let z = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    (-z * z - 0.5625).exp() * ((z - x) * (z + x) + tail_log(x)).exp() / x
}

/// Complementary error function, accurate without cancellation for `y > 0`.
pub fn erfc(y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    let x = y.abs();
    if x < 0.84375 {
        let t = if x < 1.387_778_780_781_445_7e-17 {
            x
        } else if x < 0.25 {
            x + x * small_ratio(x)
        } else {
            0.5 + (x * small_ratio(x) + (x - 0.5))
        };
        return if y < 0.0 { 1.0 + t } else { 1.0 - t };
    }
    if x < 1.25 {
        let t = ERX + mid_ratio(x);
        return if y < 0.0 { 1.0 + t } else { 1.0 - t };
    }
    if y < 0.0 {
        if x >= 6.0 {
            2.0
        } else {
            2.0 - erfc_tail(x)
        }
    } else {
        erfc_tail(x)
    }
}

/// Scaled complementary error function `exp(y^2) erfc(y)`.
///
/// Finite for every `y >= -26.6`; for large positive `y` it decays like
/// `1/(sqrt(pi) y)`.
pub fn erfcx(y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    if y < 0.0 {
        let x = -y;
        if x < 1.25 {
            return (x * x).exp() * erfc(y);
        }
        return 2.0 * (x * x).exp() - erfcx(x);
    }
    if y < 1.25 {
        return (y * y).exp() * erfc(y);
    }
    if y < 28.0 {
        return (tail_log(y) - 0.5625).exp() / y;
    }
    erfcx_asymptotic(y)
}

/// Asymptotic series for large arguments, summed while terms still shrink.
fn erfcx_asymptotic(y: f64) -> f64 {
    if y > 1e150 {
        return FRAC_1_SQRT_PI / y;
    }
    let q = 1.0 / (2.0 * y * y);
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..40 {
        let next = -term * (2 * n - 1) as f64 * q;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    FRAC_1_SQRT_PI * sum / y
}

/// Scaled first repeated integral `exp(y^2) ierfc(y)`.
///
/// For large positive `y` the direct form `1/sqrt(pi) - y erfcx(y)` cancels,
/// so an asymptotic series takes over.
pub fn ierfcx(y: f64) -> f64 {
    if y < 6.5 {
        return FRAC_1_SQRT_PI - y * erfcx(y);
    }
    // 1/sqrt(pi) * sum_{n>=1} (-1)^{n+1} (2n-1)!! / (2y^2)^n
    let q = 1.0 / (2.0 * y * y);
    let mut term = q;
    let mut sum = q;
    for n in 2..80 {
        let next = -term * (2 * n - 1) as f64 * q;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    FRAC_1_SQRT_PI * sum
}

/// First repeated integral of `erfc`, `ierfc(y) = exp(-y^2)/sqrt(pi) - y erfc(y)`.
pub fn ierfc(y: f64) -> f64 {
    if y <= 0.0 {
        (-y * y).exp() * FRAC_1_SQRT_PI - y * erfc(y)
    } else {
        (-y * y).exp() * ierfcx(y)
    }
}

/// Heat kernel `(4 pi t)^{-1/2} exp(-w^2/(4t))` of `u_t = u_ww`.
pub fn heat_kernel(w: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("heat kernel needs t > 0, got {t}")));
    }
    Ok((-w * w / (4.0 * t)).exp() / (4.0 * PI * t).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_basic_values() {
        assert_eq!(erf(0.0), 0.0);
        assert_eq!(erf(10.0), 1.0);
        assert!((erf(1.0) / 0.842_700_792_949_714_9 - 1.0).abs() < 1e-15);
        assert!((erfc(2.0) / 0.004_677_734_981_047_266 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn erfcx_regions_join() {
        for &y in &[1.25, 28.0] {
            let a = erfcx(y * (1.0 - 1e-12));
            let b = erfcx(y * (1.0 + 1e-12));
            // The function itself moves by about 1e-12 relative across the gap.
            assert!((a - b).abs() < 1e-11 * a);
        }
        let a = ierfcx(6.5 - 1e-12);
        let b = ierfcx(6.5 + 1e-12);
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn heat_kernel_rejects_nonpositive_time() {
        assert!(heat_kernel(0.0, 0.0).is_err());
        assert!((heat_kernel(0.0, 1.0).unwrap() - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-16);
    }
}
