use std::env;
use std::fs;

use pdot_eval::{trace, DEFAULT_LOOKUP_FUEL};
use pdot_parser::{parse_program, SourceProgram};

fn main() {
    let file = env::args().nth(1).expect("usage: trace FILE [FUEL]");
    let fuel = env::args().nth(2).map_or(100, |f| f.parse().expect("fuel"));
    let text = fs::read_to_string(&file).expect("readable file");
    let program = parse_program(&SourceProgram::new(text, file.clone())).expect("parses");
    let (entries, run) = trace(&program, fuel, DEFAULT_LOOKUP_FUEL);
    for e in &entries {
        println!("{}", e.line());
    }
    println!("{}", run.outcome);
}
