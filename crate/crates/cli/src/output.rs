//! Text and CSV rendering. Numbers go through Rust's `Display`, which is
//! locale independent and round-trips.

use num_complex::Complex64;
use sphfn_core::routes::Route;
use sphfn_core::{Error, SpectralParam};

pub const COMPARE_HEADER: &str =
    "group,lambda_re,lambda_im,t,route,value_re,value_im,abs_diff_vs_first";

/// Shortest round-trip form, in exponent notation outside `[1e-4, 1e15)`;
/// `-0` prints as `0`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() && !(1e-4..1e15).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub struct CsvRow {
    pub group: String,
    pub lambda: SpectralParam,
    pub t: f64,
    pub route: Route,
    pub value: Option<Complex64>,
    pub diff: Option<f64>,
    pub error: Option<Error>,
}

impl CsvRow {
    pub fn csv(&self) -> String {
        let (re, im) = match self.value {
            Some(v) => (fmt_f64(v.re), fmt_f64(v.im)),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{re},{im},{}",
            csv_field(&self.group),
            fmt_f64(self.lambda.0.re),
            fmt_f64(self.lambda.0.im),
            fmt_f64(self.t),
            self.route,
            self.diff.map(fmt_f64).unwrap_or_default(),
        )
    }

    pub fn pretty(&self) -> String {
        let value = match (&self.value, &self.error) {
            (Some(v), _) => SpectralParam(*v).to_string(),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => String::new(),
        };
        let diff = self.diff.map(|d| format!("{d:.3e}")).unwrap_or_default();
        format!(
            "{:<12} {:<24} {:<10} {:<17} {:<46} {diff}",
            self.group,
            self.lambda.to_string(),
            fmt_f64(self.t),
            self.route.name(),
            value
        )
    }
}
