#![no_main]

use incdep::algorithms::{parse, Algorithm};
use incdep::load_grammar;
use libfuzzer_sys::fuzz_target;

const GRAMMAR: &str = "\
word the : D
word big : A
word dog : N
word barks : V
word loudly : Adv
rule N < D
rule N < A
rule V < N
rule V > Adv
";

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let grammar = load_grammar(GRAMMAR).unwrap();
    let tokens: Vec<&str> = text.split_whitespace().take(64).collect();
    let Ok(sentence) = grammar.sentence(tokens) else { return };
    for alg in Algorithm::ALL {
        let out = parse(alg, &grammar, &sentence);
        assert_eq!(out.unity, out.analysis.check_unity());
        if alg.enforces_uniqueness() {
            assert!(out.analysis.check_uniqueness());
        }
        if alg == Algorithm::Lsup {
            assert!(out.analysis.is_projective());
        }
    }
});
