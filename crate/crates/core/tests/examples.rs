//! Runs every example's `main` so they stay compiling and panic-free.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(transform_invariance);
example!(noise_robustness);
example!(line_vs_circle);
example!(clustering);
example!(gesture_classification);
example!(correlation_identities);
example!(export_formats);
