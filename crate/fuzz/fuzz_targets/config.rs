#![cfg_attr(fuzzing, no_main)]

#[cfg(fuzzing)]
use libfuzzer_sys::fuzz_target;

#[cfg(fuzzing)]
fuzz_target!(|data: &[u8]| {
    use ddpopt::Config;

    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = Config::parse(text) else { return };
    let printed = cfg.to_toml().expect("a validated config serializes");
    let again = Config::parse(&printed).unwrap_or_else(|e| panic!("reparse failed with `{e}` on:\n{printed}"));
    assert_eq!(cfg, again);
});

#[cfg(not(fuzzing))]
fn main() {}
