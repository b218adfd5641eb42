//! Reading and writing algebras.
//!
//! JSON is the serde form of [`HoopTables`]. The text form is
//!
//! ```text
//! hoop <size> <unit> [zero]
//! <prod block: size rows of size indices>
//! <rimp block>
//! <limp block>
//! ```
//!
//! with blank lines and `#` comments ignored.

use crate::algebra::HoopTables;
use crate::error::InputError;
use crate::{Elem, FiniteHoop};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    /// JSON when the first non-blank character is `{`, text otherwise.
    pub fn detect(content: &str) -> Format {
        if content.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    }
}

pub fn parse(content: &str) -> Result<HoopTables, InputError> {
    match Format::detect(content) {
        Format::Json => parse_json(content),
        Format::Text => parse_text(content),
    }
}

pub fn parse_json(content: &str) -> Result<HoopTables, InputError> {
    serde_json::from_str(content).map_err(|e| {
        InputError::at("json", &[e.line(), e.column()], e.to_string())
    })
}

/// Pretty JSON with one table row per line.
pub fn to_json(m: &FiniteHoop) -> String {
    let t = m.to_tables();
    let table = |rows: &[Vec<Elem>]| {
        let body: Vec<String> = rows
            .iter()
            .map(|r| format!("    {}", serde_json::to_string(r).expect("indices serialize")))
            .collect();
        format!("[\n{}\n  ]", body.join(",\n"))
    };
    let mut fields = vec![
        format!("  \"size\": {}", t.size),
        format!("  \"unit\": {}", t.unit),
        format!("  \"prod\": {}", table(&t.prod)),
    ];
    for (key, arrows) in [("rimp", &t.rimp), ("limp", &t.limp)] {
        if let Some(a) = arrows {
            fields.push(format!("  \"{key}\": {}", table(a)));
        }
    }
    if let Some(z) = t.zero {
        fields.push(format!("  \"zero\": {z}"));
    }
    if let Some(name) = &t.name {
        fields.push(format!("  \"name\": {}", serde_json::to_string(name).expect("string serializes")));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

pub fn parse_text(content: &str) -> Result<HoopTables, InputError> {
    let mut lines = content
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| InputError::new("header", "empty input"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("hoop") {
        return Err(InputError::new("header", "expected `hoop <size> <unit> [zero]`"));
    }
    let mut number = |field: &str| -> Result<Option<usize>, InputError> {
        words
            .next()
            .map(|w| w.parse().map_err(|_| InputError::new(field, format!("not a number: {w:?}"))))
            .transpose()
    };
    let size = number("size")?.ok_or_else(|| InputError::new("size", "missing"))?;
    let unit = number("unit")?.ok_or_else(|| InputError::new("unit", "missing"))?;
    let zero = number("zero")?;
    if size == 0 {
        return Err(InputError::new("size", "carrier must be non-empty"));
    }

    let rows: Vec<&str> = lines.collect();
    if rows.len() != 3 * size {
        return Err(InputError::new(
            "tables",
            format!("expected {} rows (prod, rimp, limp), found {}", 3 * size, rows.len()),
        ));
    }
    let block = |field: &str, chunk: &[&str]| -> Result<Vec<Vec<Elem>>, InputError> {
        chunk
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let cells: Vec<&str> = row.split_whitespace().collect();
                if cells.len() != size {
                    return Err(InputError::at(field, &[i], format!("expected {size} entries, found {}", cells.len())));
                }
                cells
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.parse().map_err(|_| InputError::at(field, &[i, j], format!("not an index: {c:?}"))))
                    .collect()
            })
            .collect()
    };
    Ok(HoopTables {
        size,
        unit,
        prod: block("prod", &rows[..size])?,
        rimp: Some(block("rimp", &rows[size..2 * size])?),
        limp: Some(block("limp", &rows[2 * size..])?),
        leq: None,
        zero,
        name: None,
    })
}

pub fn to_text(m: &FiniteHoop) -> String {
    let t = m.to_tables();
    let mut s = format!("hoop {} {}", t.size, t.unit);
    if let Some(z) = t.zero {
        s.push_str(&format!(" {z}"));
    }
    s.push('\n');
    let arrows = [Some(t.prod), t.rimp, t.limp];
    for (k, table) in arrows.into_iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        for row in table.expect("validated algebras carry arrows") {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn json_round_trip() {
        for m in [named::t1(), named::l3(), named::b4()] {
            let back = FiniteHoop::from_tables(&parse(&to_json(&m)).unwrap()).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.name(), m.name());
        }
    }

    #[test]
    fn text_round_trip() {
        let g3 = named::g3();
        let text = to_text(&g3);
        assert!(text.starts_with("hoop 3 2 0\n0 0 0\n"));
        assert_eq!(FiniteHoop::from_tables(&parse(&text).unwrap()).unwrap(), g3);
    }

    #[test]
    fn text_errors_are_positioned() {
        let e = parse_text("hoop 2 1\n0 0\n0 x\n1 0\n1 1\n1 0\n1 1\n").unwrap_err();
        assert_eq!((e.field.as_str(), e.position.as_slice()), ("prod", &[1, 1][..]));
        let e = parse_text("hoop 2 1\n0 0\n0 1\n").unwrap_err();
        assert_eq!(e.field, "tables");
        assert_eq!(parse_text("hoop 0 0").unwrap_err().field, "size");
        assert_eq!(parse_text("loop 1 0").unwrap_err().field, "header");
    }

    #[test]
    fn json_without_arrows() {
        let t = parse_json(r#"{"size":2,"unit":1,"prod":[[0,0],[0,1]],"leq":[[true,true],[false,true]]}"#).unwrap();
        assert_eq!(FiniteHoop::from_tables(&t).unwrap(), named::b2());
        assert_eq!(parse_json("{\"size\": 1,").unwrap_err().field, "json");
    }
}
