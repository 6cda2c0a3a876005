//! Number formatting and CSV assembly.

use std::io;

/// Six significant digits in the style of C's `%g`: fixed notation for
/// exponents in [-4, 6), scientific otherwise, trailing zeros removed.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = usize::try_from(5 - exp).unwrap_or(0);
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_owned()), exp.abs())
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Build a CSV document in memory: header first, LF line endings.
pub fn csv_document<I, R>(header: &[&str], rows: I) -> io::Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    String::from_utf8(bytes).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-0.0), "0");
        assert_eq!(sig6(79.8123456), "79.8123");
        assert_eq!(sig6(54.2143), "54.2143");
        assert_eq!(sig6(300.0), "300");
        assert_eq!(sig6(999.744), "999.744");
        assert_eq!(sig6(0.0050), "0.005");
        assert_eq!(sig6(1.0e-5), "1e-05");
        assert_eq!(sig6(1.0e-4), "0.0001");
        assert_eq!(sig6(1.234567e-7), "1.23457e-07");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(999999.5), "1e+06");
        assert_eq!(sig6(2.605e17), "2.605e+17");
        assert_eq!(sig6(-65.0), "-65");
    }

    #[test]
    fn csv_uses_lf() {
        let doc = csv_document(&["a", "b"], [vec!["1".to_owned(), "2".to_owned()]]).unwrap();
        assert_eq!(doc, "a,b\n1,2\n");
        let empty = csv_document(&["a"], Vec::<Vec<String>>::new()).unwrap();
        assert_eq!(empty, "a\n");
    }
}
