"""
Punto de entrada del workbench de álgebras de relaciones.

    python main.py lyndon --n 4
    python main.py eq length --equation "(x + y) . z = x . z + y . z"
"""

from app.cli.main import main

if __name__ == "__main__":
    main()
