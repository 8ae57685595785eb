from hierfp.harness.cli import main

raise SystemExit(main())
