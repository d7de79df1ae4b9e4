use serde_json::Value;

use crate::args::Format;

/// A command result, rendered as an aligned table, CSV or JSON.
pub struct Output {
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Output {
    /// Two-column field/value output.
    pub fn fields(rows: Vec<(String, String)>, json: Value) -> Self {
        Output {
            header: None,
            rows: rows.into_iter().map(|(k, v)| vec![k, v]).collect(),
            json,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn all_rows(&self) -> impl Iterator<Item = &Vec<String>> {
        self.header.iter().chain(&self.rows)
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = Vec::new();
        for row in self.all_rows() {
            for (i, cell) in row.iter().enumerate() {
                let w = cell.chars().count();
                match widths.get_mut(i) {
                    Some(max) => *max = (*max).max(w),
                    None => widths.push(w),
                }
            }
        }
        let mut out = String::new();
        for row in self.all_rows() {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                let pad = widths[i] - cell.chars().count();
                line.extend(std::iter::repeat_n(' ', pad));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        for row in self.all_rows() {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory"))
            .expect("csv of utf-8 is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Output {
        Output {
            header: Some(vec!["term".into(), "a".into()]),
            rows: vec![
                vec!["L(1)*W(L(1)^2)".into(), "-3/2".into()],
                vec!["1".into(), "1".into()],
            ],
            json: json!({"rows": 2}),
        }
    }

    #[test]
    fn text_is_aligned() {
        assert_eq!(
            sample().render(Format::Text),
            "term            a\nL(1)*W(L(1)^2)  -3/2\n1               1\n"
        );
    }

    #[test]
    fn csv_quotes_when_needed() {
        let out = Output::fields(vec![("simplex".into(), "a,b".into())], json!(null));
        assert_eq!(out.render(Format::Csv), "simplex,\"a,b\"\n");
        assert_eq!(
            sample().render(Format::Csv),
            "term,a\nL(1)*W(L(1)^2),-3/2\n1,1\n"
        );
    }
}
