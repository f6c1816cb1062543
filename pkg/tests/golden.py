"""Expected Gr(2,4) catalog shared by the unit and acceptance tests."""

# Cases of the Gr(2,4) example as (J, I, generators). The sixth set of the
# last family is {13,14,43}; the variant {14,23,43} is not a stratum.
GOLDEN = {
    "C_{14|23}": ((), ("13", "14", "23", "24"), ["u_3_4 - u_1_3*u_2_4"]),
    "C_{12|34}": ((), ("13", "14", "23", "34"), ["u_2_4 - u_1_3^(-1)*u_1_4*u_2_3"]),
    "C_{(1234)}": ((), ("13", "14", "23", "34"), ["u_2_4 - u_1_3^(-1)*u_3_4 - u_1_3^(-1)*u_1_4*u_2_3"]),
    "12|34 closure, 13,23 not in J: J1": (("34",), ("13", "14", "23", "34"), ["u_2_4 - u_1_3^(-1)*u_1_4*u_2_3"]),
    "12|34 closure, 13,23 not in J: J2": (("14", "24", "34"), ("13", "14", "23", "34"), []),
    "12|34 closure, 13 or 23 in J: J1": (("13", "14", "23", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J2": (("13", "23", "24", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J3": (("13", "14", "23", "24", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J4": (("13", "14", "24", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J5": (("23", "24", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J6": (("13", "14", "34"), ("13", "14", "23", "24"), []),
    "12|34 closure, 13 or 23 in J: J7": (("14", "23", "24", "34"), ("13", "14", "23", "24"), []),
}
