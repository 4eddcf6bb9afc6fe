# keeps pytest's rootdir at the repository and the test dir importable
