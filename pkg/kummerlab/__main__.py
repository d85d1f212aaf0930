from kummerlab.main import main

main()
