macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(cyclotomic_arithmetic, "cyclotomic_arithmetic.rs");
example!(quantum_modules, "quantum_modules.rs");
example!(tilting_modules, "tilting_modules.rs");
example!(minimal_complexes, "minimal_complexes.rs");
example!(cmin_table, "cmin_table.rs");
example!(tensor_ideals, "tensor_ideals.rs");
example!(alcove_combinatorics, "alcove_combinatorics.rs");
example!(verification_suites, "verification_suites.rs");
