#!/usr/bin/env python3
"""Regenerates fixtures/nit_faculty.csv and its provenance file.

Rows from the reference query outputs are transcribed first
(see TRANSCRIBED_ROWS); the rest is padded with deterministic synthetic rows so
the table spans all 31 NITs and several storage blocks.

Usage: python3 tools/gen_fixture.py [output_dir]
"""

import csv
import random
import re
import sys
from pathlib import Path

FFFD = "�"

# University name -> (latitude, longitude). File order groups rows by
# university in this order, which keeps the reference result orders intact.
UNIVERSITIES = [
    ("NIT Patna", 25.62, 85.17),
    ("NIT Raipur", 21.25, 81.60),
    ("NIT Warangal", 17.98, 79.53),
    ("NIT Bhopal", 23.21, 77.41),
    ("NIT Jamshedpur", 22.78, 86.14),
    ("NIT Rourkela", 22.25, 84.90),
    ("NIT Kurukshetra", 29.95, 76.82),
    ("NIT Delhi", 28.85, 77.09),
    ("NIT Jaipur", 26.86, 75.81),
    ("NIT Agartala", 23.84, 91.42),
    ("NIT Silchar", 24.76, 92.79),
    ("NIT Hamirpur", 31.71, 76.53),
    ("NIT Nagaland", 25.75, 93.85),
    ("NIT Uttarakhand", 30.22, 78.78),
    ("NIT Allahabad", 25.49, 81.86),
    ("NIT Andhra Pradesh", 16.81, 81.53),
    ("NIT Arunachal Pradesh", 27.16, 93.72),
    ("NIT Calicut", 11.32, 75.93),
    ("NIT Durgapur", 23.55, 87.29),
    ("NIT Goa", 15.41, 74.01),
    ("NIT Jalandhar", 31.40, 75.54),
    ("NIT Karnataka", 13.01, 74.79),
    ("NIT Manipur", 24.81, 93.94),
    ("NIT Meghalaya", 25.61, 91.90),
    ("NIT Mizoram", 23.73, 92.72),
    ("NIT Nagpur", 21.12, 79.05),
    ("NIT Puducherry", 10.99, 79.85),
    ("NIT Sikkim", 27.31, 88.36),
    ("NIT Srinagar", 34.13, 74.84),
    ("NIT Surat", 21.17, 72.78),
    ("NIT Trichy", 10.76, 78.81),
]

FIG6_WARANGAL = [
    "Dr. K KIRAN KUMAR", "Dr. NAGA SRINIVASULU G", "Dr. JOSEPH DAVIDSON M",
    "SRI. SUBHASH CHANDRA BOSE P", "Dr. T. SADASIVA RAO", "Dr. VASU V",
    "Dr. VENKALAH N", "Dr. Y. RAVI KUMAR", "Dr. VEERESH BABU A",
    "Dr. Adepu Kumar", "Dr. SURESH BABU V", "Dr. NARASIMHA RAO R",
    "SRI. ASHOKKUMAR REDDY I", "SRI. GUPTA G R K", "SRI. VENKATESWARA RAO G",
    "DR. G.AMBA PRASAD RAO", "Dr. RAVI KUMAR PULLI", "DR. SRINADH K V S",
    "DR. N. SELVARAJ", "Dr. VENU GOPAL A", "DR. GURURAJA RAO C",
    "DR. NEELAKANTESWARA RAO A", "DR. BANGARUBABU POPURI",
    "DR. SRINIVASA RAO S",
]

# (university, faculty_name, research_area or None for NA, department,
#  source, note). Order within a university is file order.
TRANSCRIBED_ROWS = [
    ("NIT Patna", "Jyoti Prakash Singh", "Sentiment Analysis", "Computer Science and Engineering", "query:prakash", ""),
    ("NIT Patna", "Prakash Chandra", "Heat Transfer", "Mechanical Engineering", "query:prakash", ""),
    ("NIT Raipur", "Mr. Satya Prakash Sahu", "Artificial Intelligence & Expert System", "Information Technology", "query:prakash", ""),
    ("NIT Raipur", "Shaswat Sekhar Sarangi", "History of architecture", "Architecture", "query:architecture", "architecture query"),
    ("NIT Warangal", "Dr. Prakash Saudagar", "Molecular and Biochemical parasitology", "Biotechnology", "query:prakash", ""),
    ("NIT Warangal", "Dr.Prakash Saudagar", None, "Biotechnology", "query:prakash", "near-duplicate of previous row"),
    ("NIT Warangal", "DR. N." + FFFD + "SIBRAMANYAM",
     "Distribution system studies; Standards for Distribution automation; "
     "Renewable energy integration studies; Smart grid architecture",
     "Electrical Engineering", "query:architecture",
     "architecture query; displayed cell truncated, '; Smart grid architecture' reconstructed"),
    ("NIT Bhopal", "Dr. Om Prakash Meena", "Communication Networks", "Electronics and Communication Engineering", "query:prakash", ""),
    ("NIT Bhopal", "Dr. Jai Prakash Jaiswal" + FFFD,
     "Development & convergence analysis of the iterative methods for solving nnt",
     "Mathematics", "query:prakash", "trailing <ff> byte stored as U+FFFD"),
    ("NIT Bhopal", "Dr. Jai Prakash Jaiswal" + FFFD, None, "Mathematics", "query:prakash", "duplicate name with NA research area"),
    ("NIT Jamshedpur", "Dr. Prakash Sarkar", "Cosmology: Analysis of the Galaxy redshift survey data like SDSS",
     "Physics", "query:data+prakash", "source output prints the university as 'NIT Janshedpur'"),
    ("NIT Rourkela", "Dr. Jaya Prakash Hadda", "Associate Professor", "Mechanical Engineering", "query:prakash", "column-shifted cell kept verbatim"),
    ("NIT Rourkela", "Dr. Parag Prakash Sutar", "Drying and Dehydration", "Food Process Engineering", "query:prakash", ""),
    ("NIT Rourkela", "Prof. Dibya Prakash Jena", "Assistant Professor", "Industrial Design", "query:prakash", "column-shifted cell kept verbatim"),
    ("NIT Rourkela", "Prof. Dibya Prakash Jena", "Assistant Professor", "Industrial Design", "query:prakash", "exact duplicate row"),
    ("NIT Rourkela", "Prof. Jyoti Prakash Kar", "Thin Electronic Films", "Physics", "query:prakash", ""),
    ("NIT Rourkela", "Prof. Prakash Nath Vishwakarma", "Low Temperature Condenser Matter Physics", "Physics", "query:prakash", ""),
    ("NIT Kurukshetra", "Sh.Prakash Chand", None, "Civil Engineering", "query:prakash", ""),
    ("NIT Kurukshetra", "Joy Prakash Misra", "Machining Science", "Mechanical Engineering", "query:prakash", ""),
    ("NIT Kurukshetra", "Mahesh Pal", "Classification and Feature selection with hyperspectral data", "Civil Engineering", "query:data", "data query"),
    ("NIT Delhi", "Dr. Jaya Thomas", "Biodata Mining", "Computer Science and Engineering", "query:data", "data query"),
    ("NIT Jaipur", "Dr. Chetanya Prakash Sharma" + FFFD, "Physical Metallurgy", "Metallurgical and Materials Engineering", "query:prakash", ""),
    ("NIT Agartala", "Dr. Suvra Prakash Mondal", "Novel Sensors for Biomedical Applications", "Electronics and Instrumentation Engineering", "query:prakash", ""),
    ("NIT Silchar", "Dr. Jyoti Prakash Mishra", "Power Electronic Control in Electric Power and Energy Systems; Power Quality",
     "Electrical Engineering", "query:prakash", ""),
    ("NIT Hamirpur", "Dr. Prakash Choudhary", None, "Computer Science and Engineering", "query:prakash", ""),
    ("NIT Hamirpur", "Dr. Anitava Sarkar", "Climate sensitive architecture", "Architecture", "query:architecture", "architecture query"),
    ("NIT Nagaland", "Dr. Prem Prakash Mishra", "Operation Research", "Mathematics", "query:prakash", ""),
    ("NIT Uttarakhand", "Mr. Prakash Kushwaha" + FFFD, None, "Electrical Engineering", "query:prakash", ""),
    ("NIT Allahabad", "Dr. Deepak Kumar", "Balanced Realization based frequency weighted model, reduction algorithms",
     "Electrical Engineering", "query:algorithm", "algorithm query; embedded comma"),
    ("NIT Trichy", "Dr. P.Srinivasa Rao Nayak", "Non- conventional optimization algorithms", "Production Engineering", "query:algorithm", "algorithm query"),
]

FIRST = ["Amit", "Anil", "Arun", "Ashok", "Deepa", "Gaurav", "Kavita", "Manoj",
         "Meena", "Neha", "Pooja", "Rajesh", "Ramesh", "Ravi", "Sanjay", "Sunil",
         "Suresh", "Vijay", "Vivek", "Anjali", "Rakesh", "Sushma", "Dinesh",
         "Harish", "Lakshmi", "Mohan", "Nitin", "Pankaj", "Rohit", "Sandeep",
         "Shalini", "Tarun", "Uma", "Vandana", "Yogesh", "Kiran", "Madhu"]
LAST = ["Sharma", "Verma", "Gupta", "Singh", "Reddy", "Nair", "Iyer", "Das",
        "Mishra", "Patel", "Rao", "Kumar", "Joshi", "Banerjee", "Mukherjee",
        "Chatterjee", "Pillai", "Menon", "Yadav", "Pandey", "Tiwari", "Saxena",
        "Agarwal", "Bose", "Ghosh", "Naidu", "Hegde", "Kulkarni", "Deshpande", "Bhat"]
TITLES = ["Dr. ", "Dr. ", "Dr. ", "Prof. ", "Mr. ", "Ms. ", ""]
AREAS = ["Machine Learning", "Image Processing", "VLSI Design", "Power Systems",
         "Structural Engineering", "Fluid Mechanics", "Heat Transfer",
         "Computer Networks", "Wireless Communication", "Signal Processing",
         "Control Systems", "Geotechnical Engineering", "Transportation Engineering",
         "Environmental Engineering", "Thermal Engineering", "Manufacturing Processes",
         "Robotics", "Nanomaterials", "Polymer Chemistry", "Organic Synthesis",
         "Quantum Optics", "Condensed Matter Physics", "Graph Theory",
         "Numerical Analysis", "Fuzzy Logic", "Renewable Energy", "Power Electronics",
         "Embedded Systems", "Cryptography", "Software Engineering",
         "Natural Language Processing", "Computer Vision", "Biomaterials",
         "Corrosion Science", "Water Resources Engineering", "Remote Sensing and GIS",
         "Antenna Design", "Microwave Engineering", "Combustion", "Tribology",
         "Composite Materials", "Welding Technology", "Catalysis", "Process Control",
         "Fracture Mechanics", "Cloud Computing", "Internet of Things",
         "Solid State Physics", "Differential Equations", "Entrepreneurship",
         "English Literature", "Power Systems, Smart Grid",
         "Wireless Sensor Networks, Security", "Machine Learning, Optimization"]
DEPARTMENTS = ["Computer Science and Engineering", "Electrical Engineering",
               "Mechanical Engineering", "Civil Engineering",
               "Electronics and Communication Engineering", "Chemical Engineering",
               "Physics", "Chemistry", "Mathematics",
               "Metallurgical and Materials Engineering", "Biotechnology",
               "Humanities and Social Sciences"]
DESIGNATIONS = ["Professor", "Associate Professor", "Assistant Professor",
                "Assistant Professor", "Assistant Professor"]
QUALIFICATIONS = ["Ph.D.", "Ph.D.", "Ph.D.", "M.Tech", "M.E.", "M.Sc."]

FORBIDDEN = ("algorithm", "data", "architecture")
TARGET_TOTAL = 320


def slug(university):
    return "nit" + re.sub(r"[^a-z]", "", university.lower().replace("nit ", ""))


def email_for(name, university):
    bare = re.sub(r"^(dr|prof|mr|ms|sh|sri)\.\s*", "", name.lower())
    local = re.sub(r"[^a-z]+", ".", bare).strip(".") or "faculty"
    return f"{local}@{slug(university)}.ac.in"


def synthetic_row(rng, university):
    while True:
        name = rng.choice(TITLES) + rng.choice(FIRST) + " " + rng.choice(LAST)
        if "Prakash " not in name:
            break
    area = rng.choice(AREAS) if rng.random() > 0.08 else None
    dept = rng.choice(DEPARTMENTS) if rng.random() > 0.04 else None
    designation = rng.choice(DESIGNATIONS) if rng.random() > 0.05 else None
    qualification = rng.choice(QUALIFICATIONS) if rng.random() > 0.07 else None
    email = email_for(name, university) if rng.random() > 0.06 else None
    return {"name": name, "area": area, "dept": dept, "designation": designation,
            "qualification": qualification, "email": email}


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    rng = random.Random(20170423)
    for area in AREAS:
        assert not any(word in area.lower() for word in FORBIDDEN), area

    per_uni = {u: [] for u, _, _ in UNIVERSITIES}
    for uni, name, area, dept, source, note in TRANSCRIBED_ROWS:
        per_uni[uni].append({"name": name, "area": area, "dept": dept,
                             "designation": rng.choice(DESIGNATIONS), "qualification": "Ph.D.",
                             "email": email_for(name, uni), "source": source, "note": note})
    for name in FIG6_WARANGAL:
        per_uni["NIT Warangal"].append({"name": name, "area": rng.choice(AREAS),
                                        "dept": rng.choice(DEPARTMENTS),
                                        "designation": rng.choice(DESIGNATIONS),
                                        "qualification": rng.choice(QUALIFICATIONS),
                                        "email": email_for(name, "NIT Warangal"),
                                        "source": "listing:warangal", "note": "research area and other columns synthetic"})

    synth_counts = {u: rng.randint(5, 9) for u, _, _ in UNIVERSITIES}
    total = sum(len(v) for v in per_uni.values()) + sum(synth_counts.values())
    names = [u for u, _, _ in UNIVERSITIES]
    while total < TARGET_TOTAL:
        synth_counts[rng.choice(names)] += 1
        total += 1

    coords = {u: (lat, lon) for u, lat, lon in UNIVERSITIES}
    rows, provenance = [], []
    for uni in names:
        transcribed = per_uni[uni]
        synth = [dict(synthetic_row(rng, uni), source="synthetic", note="") for _ in range(synth_counts[uni])]
        # Interleave synthetic rows while keeping transcribed rows in order.
        slots = sorted(rng.sample(range(len(transcribed) + len(synth)), len(transcribed)))
        merged, fi, si = [], 0, 0
        for pos in range(len(transcribed) + len(synth)):
            if fi < len(transcribed) and pos == slots[fi]:
                merged.append(transcribed[fi]); fi += 1
            else:
                merged.append(synth[si]); si += 1
        for row in merged:
            lat, lon = coords[uni]
            lat_cell, lon_cell = f"{lat:.2f}", f"{lon:.2f}"
            if row["source"] == "synthetic" and rng.random() < 0.01:
                lat_cell, lon_cell = "NA", "NA"
            na = lambda v: "NA" if v is None else v
            rows.append([uni, row["name"], na(row["designation"]), na(row["area"]),
                         na(row["qualification"]), na(row["email"]), na(row["dept"]), lat_cell, lon_cell])
            provenance.append([len(rows) - 1, len(rows) + 1, row["source"], row["note"]])

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "nit_faculty.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["university", "faculty_name", "designation", "research_area", "qualification",
                         "email", "department", "latitude", "longitude"])
        writer.writerows(rows)
    with open(out_dir / "nit_faculty.provenance.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["record_id", "line", "source", "note"])
        writer.writerows(provenance)
    print(f"{len(rows)} records across {len(names)} universities", file=sys.stderr)


if __name__ == "__main__":
    main()
