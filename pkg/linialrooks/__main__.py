from linialrooks.main import main

main()
