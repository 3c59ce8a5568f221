from gslice.main import main

main()
