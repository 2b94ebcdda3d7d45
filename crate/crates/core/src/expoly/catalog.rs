//! The seven exponential polynomials whose absolute monotonicity drives the
//! integral representations, plus the intermediate factors of the two
//! hand-worked derivative chains.

use super::exppoly::ExpPoly;
use super::parse::parse_expoly;
use crate::error::{Error, Result};

pub const F1: &str = "(t+2)*E^(4t) - 2*t*(2*t+1)*E^(3t) - 2*(t+2)*E^(2t) + 2*t*E^(t) + t + 2";

pub const F2: &str = "(t^2+4t+6)*E^(6t) - 4t(2t^2+2t+1)*E^(5t) - 3(t^2+4t+6)*E^(4t) \
     - 8t(t^2-t-1)*E^(3t) + 3(t^2+4t+6)*E^(2t) - 4t*E^(t) - t^2 - 4t - 6";

pub const F3: &str = "(t^3+6t^2+18t+24)*E^(8t) - 4t(4t^3+6t^2+6t+3)*E^(7t) \
     - 4(t^3+6t^2+18t+24)*E^(6t) - 4t(16t^3-12t-9)*E^(5t) \
     + 6(t^3+6t^2+18t+24)*E^(4t) - 4t(4t^3-6t^2+6t+9)*E^(3t) \
     - 4(t^3+6t^2+18t+24)*E^(2t) + 12t*E^(t) + t^3 + 6t^2 + 18t + 24";

pub const H1: &str = "E^(4t) - t(t+1)*E^(3t) - 2*E^(2t) - t(t-1)*E^(t) + 1";

pub const H2: &str = "E^(4t)(t-2) + 2E^(3t)t - 2E^(2t)(t-2) + 2E^(t)t(2t-1) + t - 2";

pub const H3: &str = "E^(6t)(t^2-4t+6) - 4E^(5t)t - 3E^(4t)(t^2-4t+6) - 8E^(3t)(t^2+t-1)t \
     + 3E^(2t)(t^2-4t+6) - 4E^(t)(2t^2-2t+1)t - t^2 + 4t - 6";

pub const H4: &str = "E^(8t)(t^3-6t^2+18t-24) + 12E^(7t)t - 4E^(6t)(t^3-6t^2+18t-24) \
     + 4E^(5t)(4t^3+6t^2+6t-9)t + 6E^(4t)(t^3-6t^2+18t-24) \
     + 4E^(3t)(16t^3-12t+9)t - 4E^(2t)(t^3-6t^2+18t-24) \
     + 4E^(t)(4t^3-6t^2+6t-3)t + t^3 - 6t^2 + 18t - 24";

/// Registry labels in presentation order.
pub const NAMES: [&str; 7] = ["f1", "f2", "f3", "h1", "h2", "h3", "h4"];

pub fn text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "f1" => F1,
        "f2" => F2,
        "f3" => F3,
        "h1" => H1,
        "h2" => H2,
        "h3" => H3,
        "h4" => H4,
        "f11" => F11,
        "f12" => F12,
        "f13" => F13,
        "f21" => F21,
        "f22" => F22,
        "f23" => F23,
        "f24" => F24,
        "f25" => F25,
        _ => return Err(Error::Unknown { kind: "exponential polynomial", name: name.into() }),
    })
}

pub fn named(name: &str) -> Result<ExpPoly> {
    parse_expoly(text(name)?)
}

pub fn all() -> Vec<(&'static str, ExpPoly)> {
    NAMES.iter().map(|&n| (n, named(n).expect("catalog parses"))).collect()
}

pub const F11: &str = "4E^(3t)(2t+5) - E^(2t)(18t^2+33t+10) - 4E^(t)(t+3) + t + 2";
pub const F12: &str = "3E^(2t)(6t+19) - E^(t)(18t^2+69t+52) - t - 5";
pub const F13: &str = "12E^(t)(6t+25) - 18t^2 - 141t - 226";
pub const F21: &str = "9E^(5t)(6t^2+30t+49) - E^(4t)(250t^3+700t^2+605t+147) \
     - 6E^(3t)(8t^2+44t+75) - 6E^(2t)(9t^3+18t^2-9t-13) + E^(t)(6t^2+42t+81) - t - 3";
pub const F22: &str = "9E^(4t)(150t^2+870t+1537) - 4E^(3t)(1000t^3+4300t^2+5595t+2148) \
     - 6E^(2t)(72t^2+492t+955) - 12E^(t)(18t^3+90t^2+81t-26) + 6t^2 + 66t + 177";
pub const F23: &str = "12E^(3t)(600t^2+4380t+8983) - E^(2t)(9000t^3+65700t^2+145755t+97487) \
     - 4E^(t)(72t^2+708t+1801) - 18t^3 - 252t^2 - 945t - 865";
pub const F24: &str = "243E^(2t)(600t^2+5980t+15623) - 4E^(t)(9000t^3+119700t^2+489555t+613097) \
     - 72t^2 - 1284t - 5497";
pub const F25: &str = "486E^(t)(600t^2+7780t+25493) - 9000t^3 - 200700t^2 - 1369755t - 2853962";
