//! Writing and reading instance files. Rationals are stored as "p/q"
//! strings and survive the round trip exactly.

use tropical_rank::gen::{witness, witness_coefficients};
use tropical_rank::io::{parse_document, write_subdivision, Claims, Document, SubdivisionFile};
use tropical_rank::subdivision::TropicalPolynomial;
use tropical_rank::ratio;

fn main() -> Result<(), tropical_rank::Error> {
    let mut c = witness_coefficients().coefficients().to_vec();
    c[3] = ratio(7, 3);
    c[4] = ratio(7, 3);
    c[5] = ratio(7, 3);
    let file = SubdivisionFile {
        subdivision: witness(),
        coefficients: Some(TropicalPolynomial::new(c)),
        claims: Claims { expected: Some(2), oracle: Some(3), ..Claims::default() },
    };
    let text = write_subdivision(&file);
    print!("{text}");
    match parse_document(&text)? {
        Document::Subdivision(back) => println!("round trip exact: {}", back == file),
        other => println!("unexpected {}", other.kind()),
    }
    match parse_document("{\"dimension\": 2, \"vertices\": [[0, 0]], \"cells\": [[0, 1,]]}") {
        Err(e) => println!("{e}"),
        Ok(_) => println!("parsed"),
    }
    Ok(())
}
