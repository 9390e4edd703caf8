//! Special functions and internal-layer terms against values frozen from a
//! 50-digit mpmath evaluation (see `data/gen_oracle.py`).

use layered_advect::internal::InternalLayer;
use layered_advect::scenario::JumpConstants;
use layered_advect::special::{erf, erfc, erfcx, ierfc, ierfcx};

#[allow(dead_code)]
mod data {
    include!("data/oracle.rs");
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

#[test]
fn special_functions_match_oracle() {
    for &(y, e, ec, ex, ie, iex) in data::SPECIAL {
        assert!(rel(erf(y), e) <= 1e-14, "erf({y}) = {} vs {e}", erf(y));
        // erfc underflows to 0 past y ~ 26.5.
        if ec > 1e-300 {
            assert!(rel(erfc(y), ec) <= 1e-14, "erfc({y}) = {} vs {ec}", erfc(y));
        }
        assert!(
            rel(erfcx(y), ex) <= 1e-14,
            "erfcx({y}) = {} vs {ex}",
            erfcx(y)
        );
        assert!(
            rel(ierfcx(y), iex) <= 1e-14,
            "ierfcx({y}) = {} vs {iex}",
            ierfcx(y)
        );
        if ie > 1e-300 {
            assert!(
                rel(ierfc(y), ie) <= 1e-13,
                "ierfc({y}) = {} vs {ie}",
                ierfc(y)
            );
        }
    }
}

#[test]
fn erfcx_reproduces_erfc() {
    for &(y, _, ec, ..) in data::SPECIAL {
        if ec >= 1e-300 && y < 26.0 {
            let back = erfcx(y) * (-y * y).exp();
            assert!(rel(back, ec) <= 1e-13, "y = {y}");
        }
    }
}

fn layer() -> InternalLayer {
    let j = data::JC;
    InternalLayer::new(
        JumpConstants {
            c_plus: j[0],
            c_minus: j[1],
            d_plus: j[2],
            d_minus: j[3],
            e_plus: j[4],
            e_minus: j[5],
            f_minus: j[6],
            h_plus: j[7],
            h_minus: j[8],
        },
        data::M,
    )
}

#[test]
fn layer_terms_match_oracle() {
    let il = layer();
    let names = ["W0", "W12", "W1", "W32", "U0", "U12"];
    for &(w, t, eps, want) in data::LAYER {
        let got = [
            il.w0(w, t),
            il.w12(w, t),
            il.w1(w, t),
            il.w32(w, t),
            il.u0eps(w, t, eps),
            il.u12eps(w, t, eps),
        ];
        for k in 0..6 {
            // Absolute floor: each term is a sum of O(1 + |w|^3) pieces.
            let scale = want[k].abs().max(1e-300);
            let err = (got[k] - want[k]).abs();
            assert!(
                err <= 1e-13 * scale + 1e-14,
                "{} at w={w}, t={t}, eps={eps}: {} vs {}",
                names[k],
                got[k],
                want[k]
            );
        }
    }
}
